import sys

from jointroute.cli import main

sys.exit(main())
