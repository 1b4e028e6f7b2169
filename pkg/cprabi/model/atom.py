from dataclasses import dataclass, field, replace
from typing import Dict, Iterator, List, Optional, Tuple

from cprabi.core.exceptions import StateMismatchError


def half_str(x2: int) -> str:
    return str(x2 // 2) if x2 % 2 == 0 else f"{x2}/2"


def coupled_range(j_x2: int, i_x2: int) -> range:
    """
    Doubled total angular momenta F allowed by coupling of J and I
    """
    return range(abs(j_x2 - i_x2), j_x2 + i_x2 + 1, 2)


@dataclass(frozen=True)
class HyperfineState:
    """
    Atomic hyperfine Zeeman sublevel |n L J F mF>.
    Angular momenta are doubled integers (J_x2=1 means J=1/2).
    """

    n: int
    L: int
    J_x2: int
    F_x2: int
    mF_x2: int
    # Offset from the fine-structure reference level (rad/s)
    energy_offset: float = 0.0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"Principal quantum number must be >= 1, got {self.n}")
        if self.L < 0:
            raise ValueError(f"Orbital angular momentum must be >= 0, got {self.L}")
        if self.J_x2 <= 0:
            raise ValueError("Electronic angular momentum must be positive")
        if self.F_x2 < 0:
            raise ValueError("Total angular momentum must be non-negative")
        if abs(self.mF_x2) > self.F_x2 or (self.F_x2 - self.mF_x2) % 2:
            raise ValueError(
                f"mF={half_str(self.mF_x2)} is not a projection "
                f"of F={half_str(self.F_x2)}"
            )

    @property
    def manifold(self) -> Tuple[int, int, int]:
        return self.n, self.L, self.J_x2

    def __str__(self):
        return (
            f"|n={self.n},L={self.L},J={half_str(self.J_x2)},"
            f"F={half_str(self.F_x2)},mF={half_str(self.mF_x2)}>"
        )


@dataclass(frozen=True)
class TransitionLine:
    """
    Dipole transition from the lower manifold to an (n, L, J) manifold.
    """

    n: int
    L: int
    upper_J_x2: int
    # Reduced matrix element <J_lower||d||J_upper> (C*m)
    reduced_dipole: float
    # Transition angular frequency to the reference hyperfine level (rad/s)
    base_frequency: float
    # Doubled nuclear spin of the species
    nuclear_spin_x2: int
    # Doubled F -> hyperfine interval relative to the reference level (rad/s)
    hyperfine_intervals: Dict[int, float] = field(default_factory=dict, hash=False)
    # Manifold lies below the lower states (emission channel)
    below: bool = False
    # (n, L, J_x2) of the lower manifold the line leaves, None if not known
    lower_manifold: Optional[Tuple[int, int, int]] = None

    @property
    def manifold(self) -> Tuple[int, int, int]:
        return self.n, self.L, self.upper_J_x2

    def interval(self, F_x2: int) -> float:
        try:
            return self.hyperfine_intervals[F_x2]
        except KeyError:
            raise StateMismatchError(
                f"F={half_str(F_x2)} is not a hyperfine level of "
                f"J={half_str(self.upper_J_x2)} manifold"
            )

    def frequency(self, F_x2: int) -> float:
        """
        Signed transition frequency omega_{i,lower} to hyperfine level F (rad/s).
        Negative for lines lying below the lower manifold.
        """
        base = -self.base_frequency if self.below else self.base_frequency
        return base + self.interval(F_x2)

    def state(self, F_x2: int, mF_x2: int) -> HyperfineState:
        return HyperfineState(
            n=self.n,
            L=self.L,
            J_x2=self.upper_J_x2,
            F_x2=F_x2,
            mF_x2=mF_x2,
            energy_offset=self.interval(F_x2),
        )

    def states(self) -> Iterator[HyperfineState]:
        for F_x2 in sorted(self.hyperfine_intervals):
            for mF_x2 in range(-F_x2, F_x2 + 1, 2):
                yield self.state(F_x2, mF_x2)

    def contains(self, state: HyperfineState) -> bool:
        return (
            state.manifold == self.manifold
            and state.F_x2 in self.hyperfine_intervals
        )


@dataclass(frozen=True)
class SpeciesData:
    """
    Lower fine-structure manifold and the dipole lines leaving it.
    Immutable after loading.
    """

    nuclear_spin_x2: int
    lines: Tuple[TransitionLine, ...]
    lower_n: int = 1
    lower_L: int = 0
    lower_J_x2: int = 1
    name: Optional[str] = None

    @property
    def lower_manifold(self) -> Tuple[int, int, int]:
        return self.lower_n, self.lower_L, self.lower_J_x2

    def lower_state(self, F_x2: int, mF_x2: int, energy_offset: float = 0.0):
        if F_x2 not in coupled_range(self.lower_J_x2, self.nuclear_spin_x2):
            raise StateMismatchError(
                f"F={half_str(F_x2)} is not a hyperfine level of the lower manifold"
            )
        return HyperfineState(
            n=self.lower_n,
            L=self.lower_L,
            J_x2=self.lower_J_x2,
            F_x2=F_x2,
            mF_x2=mF_x2,
            energy_offset=energy_offset,
        )

    def degenerate_pair(self, F_x2: int = 2, mF_x2: int = 2):
        """
        Returns (|F,-mF>, |F,+mF>) pair of the lower manifold,
        by default |g>=|F=1,mF=-1> and |e>=|F=1,mF=+1>
        """
        return self.lower_state(F_x2, -mF_x2), self.lower_state(F_x2, mF_x2)

    def line(self, upper_J_x2: int) -> TransitionLine:
        matching = [line for line in self.lines if line.upper_J_x2 == upper_J_x2]
        if not matching:
            raise StateMismatchError(
                f"Species has no line to J={half_str(upper_J_x2)} manifold"
            )
        if len(matching) > 1:
            raise StateMismatchError(
                f"Species has {len(matching)} lines to J={half_str(upper_J_x2)}, "
                "select line by manifold"
            )
        return matching[0]

    def line_for(self, state: HyperfineState) -> TransitionLine:
        for line in self.lines:
            if line.contains(state):
                return line
        raise StateMismatchError(f"State {state} doesn't belong to any species line")

    def intermediate_states(self) -> List[Tuple[TransitionLine, HyperfineState]]:
        return [(line, state) for line in self.lines for state in line.states()]

    def with_intervals(self, scale: float) -> "SpeciesData":
        """
        Copy with every hyperfine interval multiplied by scale
        """
        return self.replace_lines(
            lambda line: replace(
                line,
                hyperfine_intervals={
                    F_x2: interval * scale
                    for F_x2, interval in line.hyperfine_intervals.items()
                },
            )
        )

    def replace_lines(self, transform) -> "SpeciesData":
        return replace(self, lines=tuple(transform(line) for line in self.lines))
