import sys

from .speclang.cli import main

sys.exit(main())
