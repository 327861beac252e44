import sys

from logring.main import main

sys.exit(main())
