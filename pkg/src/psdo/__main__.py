import sys

from psdo.app.cli import main

sys.exit(main())
