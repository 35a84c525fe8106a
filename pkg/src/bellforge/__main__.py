import sys

from bellforge.cli import main

sys.exit(main())
