#!/usr/bin/env python
# Created by "Thieu" at 16:45, 04/09/2026 ----------%
#       Email: nguyenthieu2102@gmail.com            %
#       Github: https://github.com/thieu1995        %
# --------------------------------------------------%

from tancert.cli import main

raise SystemExit(main())
