import sys

from runstat.cli import main

sys.exit(main())
