"""Rule sets for the game and its variants.

A :class:`VariantSpec` lists one :class:`CopSpec` per cop, a robber record,
the capture mode and whether the board is oriented.  The named constructors
cover the standard variants; anything else can be assembled by hand or read
from a small ``key = value`` config file.
"""
from __future__ import annotations

import configparser
from dataclasses import dataclass, field, replace
from pathlib import Path

from .errors import InvalidSpecError, MalformedInputError

ACTIVE, LAZY, FLEXIBLE = "active", "lazy", "flexible"
OCCUPY, SURROUND = "occupy", "surround"

_CAPTURE_ALIASES = {"occupy": OCCUPY, "occupy_or_reach": OCCUPY, "surround": SURROUND}


@dataclass(frozen=True)
class CopSpec:
    speed: int = 1
    reach: int = 0
    activity: str = FLEXIBLE

    def __post_init__(self):
        if self.speed < 1:
            raise InvalidSpecError("cop speed must be >= 1")
        if self.reach < 0:
            raise InvalidSpecError("cop reach must be >= 0")
        if self.activity not in (ACTIVE, LAZY, FLEXIBLE):
            raise InvalidSpecError(f"unknown cop activity {self.activity!r}")
        if self.activity == ACTIVE and self.speed != 1:
            raise InvalidSpecError("an active cop must have speed 1")


@dataclass(frozen=True)
class RobberSpec:
    speed: int = 1
    activity: str = FLEXIBLE
    attacking: bool = False

    def __post_init__(self):
        if self.speed < 1:
            raise InvalidSpecError("robber speed must be >= 1")
        if self.activity == LAZY:
            # one lazy robber moves or stays as it likes: same as flexible
            object.__setattr__(self, "activity", FLEXIBLE)
        if self.activity not in (ACTIVE, FLEXIBLE):
            raise InvalidSpecError(f"unknown robber activity {self.activity!r}")
        if self.activity == ACTIVE and self.speed != 1:
            raise InvalidSpecError("an active robber must have speed 1")
        if self.attacking and self.speed != 1:
            raise InvalidSpecError("an attacking robber must have speed 1")


@dataclass(frozen=True)
class VariantSpec:
    cops: tuple[CopSpec, ...]
    robber: RobberSpec = field(default_factory=RobberSpec)
    capture_mode: str = OCCUPY
    directed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "cops", tuple(self.cops))
        mode = _CAPTURE_ALIASES.get(self.capture_mode)
        if mode is None:
            raise InvalidSpecError(f"unknown capture mode {self.capture_mode!r}")
        object.__setattr__(self, "capture_mode", mode)
        if not self.cops:
            raise InvalidSpecError("at least one cop is required")
        if self.robber.attacking:
            if any(c.reach > 0 for c in self.cops):
                raise InvalidSpecError("an attacking robber cannot face cops with reach")
            if mode == SURROUND:
                raise InvalidSpecError("an attacking robber cannot be combined with surround capture")
        if mode == SURROUND and any(c.reach > 0 for c in self.cops):
            raise InvalidSpecError("reach has no meaning under surround capture")

    @property
    def k(self) -> int:
        return len(self.cops)

    @property
    def identical_cops(self) -> bool:
        return len(set(self.cops)) == 1

    def with_k(self, k: int) -> "VariantSpec":
        """Same rules with ``k`` copies of the first cop."""
        if k < 1:
            raise InvalidSpecError("k must be >= 1")
        return replace(self, cops=(self.cops[0],) * k)

    @property
    def name(self) -> str:
        cop = self.cops[0]
        rob = self.robber
        if not self.identical_cops or cop.reach:
            return "generalized"
        if self.capture_mode == SURROUND:
            plain = cop == CopSpec() and rob == RobberSpec()
            return "surround" if plain and not self.directed else "generalized"
        tags = []
        if cop.activity == LAZY:
            tags.append("lazy")
        if rob.attacking:
            tags.append("attacking")
        if cop.activity == ACTIVE and rob.activity == ACTIVE:
            tags.append("active")
        elif cop.activity == ACTIVE or rob.activity == ACTIVE:
            return "generalized"
        if rob.speed > 1:
            tags.append("fast")
        if cop.speed > 1:
            return "generalized"
        if self.directed:
            tags.append("directed")
        if not tags:
            return "classic"
        return tags[0] if len(tags) == 1 else "generalized"

    # -- named variants ----------------------------------------------------

    @classmethod
    def classic(cls, k: int = 1) -> "VariantSpec":
        return cls((CopSpec(),) * k)

    @classmethod
    def lazy(cls, k: int = 1) -> "VariantSpec":
        return cls((CopSpec(activity=LAZY),) * k)

    @classmethod
    def attacking(cls, k: int = 1) -> "VariantSpec":
        return cls((CopSpec(),) * k, RobberSpec(attacking=True))

    @classmethod
    def active(cls, k: int = 1) -> "VariantSpec":
        return cls((CopSpec(activity=ACTIVE),) * k, RobberSpec(activity=ACTIVE))

    @classmethod
    def surround(cls, k: int = 1) -> "VariantSpec":
        return cls((CopSpec(),) * k, capture_mode=SURROUND)

    @classmethod
    def fast(cls, k: int = 1, s: int = 2) -> "VariantSpec":
        return cls((CopSpec(),) * k, RobberSpec(speed=s))

    @classmethod
    def directed_classic(cls, k: int = 1) -> "VariantSpec":
        return cls((CopSpec(),) * k, directed=True)

    @classmethod
    def by_name(cls, name: str, k: int = 1, s: int = 2) -> "VariantSpec":
        makers = {
            "classic": cls.classic,
            "lazy": cls.lazy,
            "attacking": cls.attacking,
            "attack": cls.attacking,
            "active": cls.active,
            "surround": cls.surround,
            "directed": cls.directed_classic,
        }
        if name == "fast":
            return cls.fast(k, s)
        if name not in makers:
            raise InvalidSpecError(f"unknown variant {name!r}")
        return makers[name](k)

    # -- text config -------------------------------------------------------

    def to_config(self) -> str:
        lines = [
            "[game]",
            f"k = {self.k}",
            f"capture = {self.capture_mode}",
            f"directed = {str(self.directed).lower()}",
            "",
            "[robber]",
            f"speed = {self.robber.speed}",
            f"activity = {self.robber.activity}",
            f"attacking = {str(self.robber.attacking).lower()}",
        ]
        for i, c in enumerate(self.cops):
            lines += ["", f"[cop.{i}]", f"speed = {c.speed}", f"reach = {c.reach}", f"activity = {c.activity}"]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_config(cls, text: str, k: int | None = None) -> "VariantSpec":
        """Parse ``[game]``, ``[robber]``, ``[cop]`` (default for every cop)
        and ``[cop.i]`` sections.  ``k`` overrides the game section."""
        cp = configparser.ConfigParser()
        try:
            cp.read_string(text)
        except configparser.Error as exc:
            raise MalformedInputError(str(exc)) from exc
        known = {"game", "robber", "cop"}
        for sec in cp.sections():
            if sec not in known and not sec.startswith("cop."):
                raise MalformedInputError(f"unknown section [{sec}]")
        try:
            game = cp["game"] if cp.has_section("game") else {}
            kk = k if k is not None else int(game.get("k", 1))
            mode = game.get("capture", OCCUPY)
            directed = _bool(game.get("directed", "false"))
            default = _cop_from(cp["cop"]) if cp.has_section("cop") else CopSpec()
            cops = []
            for i in range(kk):
                sec = f"cop.{i}"
                cops.append(_cop_from(cp[sec], default) if cp.has_section(sec) else default)
            rob = RobberSpec()
            if cp.has_section("robber"):
                r = cp["robber"]
                rob = RobberSpec(
                    speed=int(r.get("speed", 1)),
                    activity=r.get("activity", FLEXIBLE),
                    attacking=_bool(r.get("attacking", "false")),
                )
        except (ValueError, KeyError) as exc:
            if isinstance(exc, InvalidSpecError):
                raise
            raise MalformedInputError(str(exc)) from exc
        return cls(tuple(cops), rob, mode, directed)

    @classmethod
    def from_file(cls, path, k: int | None = None) -> "VariantSpec":
        return cls.from_config(Path(path).read_text(), k=k)


def _bool(text: str) -> bool:
    low = str(text).strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _cop_from(sec, base: CopSpec = CopSpec()) -> CopSpec:
    return CopSpec(
        speed=int(sec.get("speed", base.speed)),
        reach=int(sec.get("reach", base.reach)),
        activity=sec.get("activity", base.activity),
    )
