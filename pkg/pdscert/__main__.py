import sys

from pdscert.main import main

sys.exit(main())
