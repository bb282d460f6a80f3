# (C) Copyright 2024 Orthokit contributors.
#
# This software is licensed under the terms of the Apache Licence Version 2.0
# which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
#

import sys

from orthokit.logic.cli import main

sys.exit(main())
