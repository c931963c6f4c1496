import sys

from lumpspace.cli import main

sys.exit(main())
