#!/usr/bin/env python
# Created by "Thieu" at 09:00, 02/09/2026 ----------%
#       Email: nguyenthieu2102@gmail.com            %
#       Github: https://github.com/thieu1995        %
# --------------------------------------------------%
#
# ## 1. Import packages, classes
# ## 2. Create object
# ## 3. From object calls function and use
#
# from tancert import ApproximationAnalyzer, load_instance
#
# ##### Built-in instance: g1 = 1 - x^3, g2 = x^3 - 3x^2 + x - 3, C = [1, +inf), xbar = 1
# analyzer = ApproximationAnalyzer("tancert/data/ex42.json", anchor=0, seed=0)
#
# ## Get the result of any check you want to
# print(analyzer.NRCQ())
# print(analyzer.NACQ())
# print(analyzer.SCHIP())
#
# ## Multiplier certificate for x = 0: lambda = (1/3, 0)
# rows = analyzer.CERT(x=[0.0])
# print(rows[0]["certificate"].lam)
#
# ## Several checks at once
# print(analyzer.get_results_by_list_names(["NRCQ", "NACQ", "NC"]))


import logging

__version__ = "1.0.0"

from .instance import Instance, load_instance
from .analyzer import Analyzer
from .approximation import ApproximationAnalyzer

logging.getLogger(__name__).addHandler(logging.NullHandler())
