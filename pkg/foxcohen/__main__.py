import sys

from foxcohen.cli import main

sys.exit(main())
