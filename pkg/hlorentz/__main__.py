import sys

from hlorentz.cli import main

sys.exit(main())
