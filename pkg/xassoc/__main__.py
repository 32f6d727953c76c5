import sys

from xassoc.cli.main import main

sys.exit(main())
