import sys

from mwforge.cli import main

sys.exit(main())
