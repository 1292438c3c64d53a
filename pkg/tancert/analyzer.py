#!/usr/bin/env python
# Created by "Thieu" at 09:15, 04/09/2026 ----------%
#       Email: nguyenthieu2102@gmail.com            %
#       Github: https://github.com/thieu1995        %
# --------------------------------------------------%

from tancert.instance import Instance, load_instance
from tancert.utils import constant as co
from tancert.utils.exception import InputError


class Analyzer:
    """
    This is base class for all analyses of an instance at one of its anchors
    """

    EPSILON = co.EPSILON
    SUPPORT = {}

    def __init__(self, instance=None, anchor=0, **kwargs):
        """
        Args:
            instance (Instance, str, dict): The instance, a path to its JSON file or the decoded document
            anchor (int): Index of the anchor xbar the checks run at
        """
        if kwargs is None: kwargs = {}
        self.set_keyword_arguments(kwargs)
        self.instance = instance if isinstance(instance, Instance) or instance is None else load_instance(instance)
        self.anchor = anchor

    def set_keyword_arguments(self, kwargs):
        for key, value in kwargs.items():
            setattr(self, key, value)

    @classmethod
    def get_support(cls, name=None, verbose=False):
        if name == "all":
            if verbose:
                for key, value in cls.SUPPORT.items():
                    print(f"Check {key} : {value}")
            return cls.SUPPORT
        if name not in cls.SUPPORT:
            raise InputError(f"{cls.__name__} doesn't support check named: {name}")
        if verbose:
            print(f"Check {name}: {cls.SUPPORT[name]}")
        return cls.SUPPORT[name]

    def get_result_by_name(self, check_name=str, paras=None) -> dict:
        """
        Get single check by name, specific parameter of check by dictionary

        Args:
            check_name (str): Select name of check
            paras (dict): Dictionary of keyword arguments for that check

        Returns:
            result (dict): { check_name: value }
        """
        obj = getattr(self, check_name)
        return {check_name: obj() if paras is None else obj(**paras)}

    def get_results_by_list_names(self, list_check_names=list, list_paras=None) -> dict:
        """
        Get results of list checks by its name and parameters

        Args:
            list_check_names (list): e.g, ["NRCQ", "NACQ", "SCHIP"]
            list_paras (list): e.g, [None, {"anchor": 1}, None]

        Returns:
            results (dict): e.g, { "NRCQ": Verdict(...), "NACQ": Verdict(...), "SCHIP": Verdict(...) }
        """
        if list_paras is not None and len(list_check_names) != len(list_paras):
            raise InputError("list_check_names and list_paras must have the same length!")
        results = {}
        for idx, check_name in enumerate(list_check_names):
            paras = None if list_paras is None else list_paras[idx]
            results.update(self.get_result_by_name(check_name, paras))
        return results

    def get_results_by_dict(self, checks_dict: dict) -> dict:
        """
        Get results of list checks by its name and parameters wrapped by dictionary

        For example:
            {
                "NACQ": {"anchor": 1},
                "PROJ": {"x": [0, -1]}
            }

        Args:
            checks_dict (dict): key is check name and value is dict of parameters

        Returns:
            results (dict): e.g, { "NACQ": Verdict(...), "PROJ": array([0., 0.]) }
        """
        results = {}
        for check_name, paras_dict in checks_dict.items():
            results.update(self.get_result_by_name(check_name, paras_dict))
        return results
