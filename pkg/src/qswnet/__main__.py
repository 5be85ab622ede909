import sys

from qswnet.cli import main

sys.exit(main())
