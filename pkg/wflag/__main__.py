import sys

from wflag.main import main

sys.exit(main())
