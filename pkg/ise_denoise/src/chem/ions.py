"""Ion species, the ion registry and physical constants."""

from dataclasses import dataclass
from typing import Dict, Iterator, Tuple

from ise_denoise.src.errors import DomainError

CANONICAL_ORDER: Tuple[str, ...] = ("K", "Ca", "NO3", "NH4")


@dataclass(frozen=True)
class IonSpecies:
    """An ion identified by name with its signed charge number z."""

    name: str
    charge: int

    def __post_init__(self) -> None:
        if not self.name:
            raise DomainError("ion name must be non-empty")
        if self.charge == 0:
            raise DomainError(f"ion {self.name} must carry a nonzero charge")


@dataclass(frozen=True)
class PhysicalConstants:
    """Gas constant R in J/(mol K) and Faraday constant F in C/mol."""

    R: float = 8.314462618
    F: float = 96485.33212

    def __post_init__(self) -> None:
        if self.R <= 0 or self.F <= 0:
            raise DomainError("physical constants R and F must be strictly positive")


class IonRegistry:
    """Name-unique collection of ion species, iterated in insertion order."""

    def __init__(self, ions: Tuple[IonSpecies, ...] = ()):
        self._ions: Dict[str, IonSpecies] = {}
        for ion in ions:
            self.register(ion)

    def register(self, ion: IonSpecies) -> IonSpecies:
        """Add an ion; names must be unique within the registry."""
        if ion.name in self._ions:
            raise DomainError(f"ion {ion.name} is already registered")
        self._ions[ion.name] = ion
        return ion

    def get(self, name: str) -> IonSpecies:
        try:
            return self._ions[name]
        except KeyError:
            raise DomainError(
                f"unknown ion {name!r}; registered: {', '.join(self._ions)}"
            ) from None

    def names(self) -> Tuple[str, ...]:
        return tuple(self._ions)

    def __contains__(self, name: object) -> bool:
        return name in self._ions

    def __iter__(self) -> Iterator[IonSpecies]:
        return iter(self._ions.values())

    def __len__(self) -> int:
        return len(self._ions)


POTASSIUM = IonSpecies("K", 1)
CALCIUM = IonSpecies("Ca", 2)
NITRATE = IonSpecies("NO3", -1)
AMMONIUM = IonSpecies("NH4", 1)


def default_registry() -> IonRegistry:
    """Registry of the four ISE-measured ions in canonical order."""
    return IonRegistry((POTASSIUM, CALCIUM, NITRATE, AMMONIUM))


DEFAULT_CONSTANTS = PhysicalConstants()
