import sys

from latinkeys.cli import main

sys.exit(main())
