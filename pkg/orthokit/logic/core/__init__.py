# (C) Copyright 2024 Orthokit contributors.
#
# This software is licensed under the terms of the Apache Licence Version 2.0
# which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
#

import logging
from abc import abstractmethod

LOG = logging.getLogger(__name__)


class OrthokitError(Exception):
    """Root of every error raised by orthokit-logic."""


class StructureError(OrthokitError):
    """An operation needs a table (box, arrow, i, selection...) the structure lacks."""


class ValidationError(OrthokitError, ValueError):
    """A document or structure violates its declared invariants."""


class BudgetExceeded(OrthokitError):
    """A bounded computation would examine more instances than allowed."""

    def __init__(self, what, count, cap):
        super().__init__(f"{what}: {count:,} instances exceed the cap of {cap:,}")
        self.what = what
        self.count = count
        self.cap = cap


class ConditioningError(OrthokitError, ZeroDivisionError):
    """Conditional probability requested on a measure-zero element."""


class Witness:
    """A counterexample to a law, a property or a frame condition.

    ``values`` lists the offending tuple (element or possibility names) in
    the order the law quantifies over them.
    """

    def __init__(self, law, values, message=None):
        self.law = law
        self.values = tuple(values)
        self.message = message

    def __eq__(self, other):
        return isinstance(other, Witness) and (self.law, self.values) == (other.law, other.values)

    def __hash__(self):
        return hash((self.law, self.values))

    def __repr__(self):
        return f"Witness({self.law}, {self.values})"

    def __str__(self):
        text = f"{self.law} fails at ({', '.join(str(v) for v in self.values)})"
        if self.message:
            text += f": {self.message}"
        return text

    def to_document(self):
        r = dict(law=self.law, values=list(self.values))
        if self.message:
            r["message"] = self.message
        return r


class Base:
    """Common interface of the finite structures handled by the package."""

    @abstractmethod
    def to_document(self):
        """Returns the JSON-serialisable document describing the object."""
        self._not_implemented()

    @abstractmethod
    def to_dot(self):
        """Returns a Graphviz DOT rendering of the object."""
        self._not_implemented()

    def save(self, path):
        """Write the object to ``path``: Graphviz for ``.dot``, JSON otherwise."""
        from orthokit.logic.utils import dump_json

        with open(path, "w") as f:
            if str(path).endswith(".dot"):
                f.write(self.to_dot())
            else:
                dump_json(self.to_document(), f)

    def _not_implemented(self):
        import inspect

        func = inspect.stack()[1][3]
        module = self.__class__.__module__
        name = self.__class__.__name__
        raise NotImplementedError(f"{module}.{name}.{func}()")
