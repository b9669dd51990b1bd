"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: validation problems exit 2, resource
caps exit 3, oracle-contract violations exit 4.
"""

from __future__ import annotations


class ParetoCoverError(Exception):
    """Base class for all package errors."""


class ValidationError(ParetoCoverError):
    """Malformed input: bad parameters, shapes, or file contents."""


class DomainError(ValidationError):
    """An argument is outside the mathematical domain of an operation."""


class InfeasibleCoverError(ParetoCoverError):
    """A cover fails to dominate the support almost surely.

    Carries the exact uncovered probability mass.
    """

    def __init__(self, uncovered_mass):
        self.uncovered_mass = uncovered_mass
        super().__init__(f"cover is infeasible: uncovered mass {uncovered_mass}")


class ResourceLimitError(ParetoCoverError):
    """A configured enumeration or work budget would be exceeded."""


class OracleContractError(ParetoCoverError):
    """A measure oracle returned a value violating its approximation contract."""


class ConsistencyError(ParetoCoverError):
    """An internal identity that must hold exactly failed to hold."""
