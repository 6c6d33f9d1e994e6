import sys

from bcast.cli import main

sys.exit(main())
