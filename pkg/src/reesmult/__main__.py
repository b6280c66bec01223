import sys

from reesmult.cli import main

sys.exit(main())
