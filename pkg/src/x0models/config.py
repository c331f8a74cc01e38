"""Project configuration: a TOML file naming forms, roles and an explorer family.

Rationals are always written as ``"p/q"`` strings; floats are rejected.

Example::

    level = 2
    weight = 12

    [forms.Delta]
    eta = [[1, 24]]

    [forms.mixed]
    atoms = [{coeff = "1/2", eta = [[1, 24]]}, {coeff = "-3", eisenstein = [{k = 4, d = 2, power = 3}]}]

    [roles]
    f = "Delta"
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

import tomli
import tomli_w

from .explorer import FamilyConfig
from .forms import EisensteinFactor, Form


class ConfigError(ValueError):
    pass


def _rational(x: Any, where: str) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise ConfigError(f"{where}: write exact rationals as \"p/q\" strings, not {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except ValueError:
            raise ConfigError(f"{where}: bad rational {x!r}") from None
    raise ConfigError(f"{where}: expected a rational, got {x!r}")


def _fmt_rational(x: Fraction) -> str:
    return str(x)


@dataclass(frozen=True)
class AtomSpec:
    coeff: Fraction = Fraction(1)
    eta: tuple[tuple[int, int], ...] = ()
    eisenstein: tuple[tuple[int, int, int], ...] = ()

    @classmethod
    def parse(cls, raw: dict, where: str) -> AtomSpec:
        unknown = set(raw) - {"coeff", "eta", "eisenstein"}
        if unknown:
            raise ConfigError(f"{where}: unknown keys {sorted(unknown)}")
        eta = []
        for pair in raw.get("eta", []):
            if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(v, int) for v in pair)):
                raise ConfigError(f"{where}: eta entries are [delta, r] integer pairs, got {pair!r}")
            eta.append((pair[0], pair[1]))
        eis = []
        for e in raw.get("eisenstein", []):
            if not isinstance(e, dict) or "k" not in e:
                raise ConfigError(f"{where}: Eisenstein factors are {{k, d, power}} tables")
            eis.append((int(e["k"]), int(e.get("d", 1)), int(e.get("power", 1))))
        if not eta and not eis:
            raise ConfigError(f"{where}: atom has neither eta nor eisenstein factors")
        return cls(_rational(raw.get("coeff", 1), where), tuple(eta), tuple(eis))

    def dump(self) -> dict:
        out: dict[str, Any] = {}
        if self.coeff != 1:
            out["coeff"] = _fmt_rational(self.coeff)
        if self.eta:
            out["eta"] = [list(p) for p in self.eta]
        if self.eisenstein:
            out["eisenstein"] = [{"k": k, "d": d, "power": p} for k, d, p in self.eisenstein]
        return out


@dataclass(frozen=True)
class FormSpec:
    atoms: tuple[AtomSpec, ...]

    @classmethod
    def parse(cls, raw: dict, where: str) -> FormSpec:
        if not isinstance(raw, dict):
            raise ConfigError(f"{where}: form description must be a table")
        if "atoms" in raw:
            if set(raw) != {"atoms"}:
                raise ConfigError(f"{where}: 'atoms' cannot be mixed with shorthand keys")
            atoms = tuple(AtomSpec.parse(a, f"{where}.atoms[{i}]") for i, a in enumerate(raw["atoms"]))
            if not atoms:
                raise ConfigError(f"{where}: empty atom list")
            return cls(atoms)
        return cls((AtomSpec.parse(raw, where),))

    def dump(self) -> dict:
        if len(self.atoms) == 1:
            return self.atoms[0].dump()
        return {"atoms": [a.dump() for a in self.atoms]}

    def build(self, level: int, name: str) -> Form:
        atoms = [
            (a.coeff, list(a.eta) or None, [EisensteinFactor(k, d, p) for k, d, p in a.eisenstein])
            for a in self.atoms
        ]
        return Form.from_atoms(level, atoms, name=name)


ROLE_KEYS = ("f", "g", "h")
EXPLORER_KEYS = {"f", "g", "basis", "box", "samples", "seed", "zero_constraints",
                 "determines_function_field", "threshold"}


@dataclass
class ProjectConfig:
    level: int
    weight: int
    forms: dict[str, FormSpec]
    roles: dict[str, str] = field(default_factory=dict)
    explorer: dict[str, Any] | None = None
    output: dict[str, str] = field(default_factory=dict)

    @classmethod
    def parse(cls, text: str) -> ProjectConfig:
        try:
            raw = tomli.loads(text)
        except tomli.TOMLDecodeError as exc:
            raise ConfigError(f"config is not valid TOML: {exc}") from None
        return cls.from_dict(raw)

    @classmethod
    def load(cls, path: str | Path) -> ProjectConfig:
        return cls.parse(Path(path).read_text(encoding="utf-8"))

    @classmethod
    def from_dict(cls, raw: dict) -> ProjectConfig:
        unknown = set(raw) - {"level", "weight", "forms", "roles", "explorer", "output"}
        if unknown:
            raise ConfigError(f"unknown top-level keys {sorted(unknown)}")
        try:
            level, weight = int(raw["level"]), int(raw["weight"])
        except KeyError as exc:
            raise ConfigError(f"missing required key {exc.args[0]!r}") from None
        if level < 1:
            raise ConfigError("level must be positive")
        forms = {name: FormSpec.parse(desc, f"forms.{name}") for name, desc in raw.get("forms", {}).items()}
        roles = dict(raw.get("roles", {}))
        bad = set(roles) - set(ROLE_KEYS)
        if bad:
            raise ConfigError(f"unknown roles {sorted(bad)}")
        explorer = raw.get("explorer")
        if explorer is not None:
            explorer = dict(explorer)
            bad = set(explorer) - EXPLORER_KEYS
            if bad:
                raise ConfigError(f"unknown explorer keys {sorted(bad)}")
            if "threshold" in explorer:
                explorer["threshold"] = _rational(explorer["threshold"], "explorer.threshold")
        cfg = cls(level, weight, forms, roles, explorer, dict(raw.get("output", {})))
        cfg.check_names()
        return cfg

    def check_names(self) -> None:
        for role, name in self.roles.items():
            if name not in self.forms:
                raise ConfigError(f"role {role} refers to unknown form {name!r}")
        present = [self.roles[r] for r in ROLE_KEYS if r in self.roles]
        if len(set(present)) != len(present):
            raise ConfigError("roles must name distinct forms")
        if self.explorer is not None:
            for name in self.explorer.get("basis", []):
                if name not in self.forms:
                    raise ConfigError(f"explorer basis refers to unknown form {name!r}")

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"level": self.level, "weight": self.weight}
        out["forms"] = {name: spec.dump() for name, spec in self.forms.items()}
        if self.roles:
            out["roles"] = dict(self.roles)
        if self.explorer is not None:
            ex = dict(self.explorer)
            if "threshold" in ex:
                ex["threshold"] = _fmt_rational(ex["threshold"])
            out["explorer"] = ex
        if self.output:
            out["output"] = dict(self.output)
        return out

    def dumps(self) -> str:
        return tomli_w.dumps(self.to_dict())

    def form(self, name: str) -> Form:
        if name not in self.forms:
            raise ConfigError(f"unknown form {name!r}")
        return self.forms[name].build(self.level, name)

    def role(self, role: str) -> Form:
        if role not in self.roles:
            raise ConfigError(f"role {role} is not set")
        return self.form(self.roles[role])

    def family(self, seed: int | None = None) -> FamilyConfig:
        if self.explorer is None:
            raise ConfigError("config has no [explorer] table")
        ex = self.explorer
        f = ex.get("f", self.roles.get("f"))
        g = ex.get("g", self.roles.get("g"))
        if f is None or g is None:
            raise ConfigError("explorer needs f and g")
        basis = list(ex.get("basis", []))
        return FamilyConfig(
            level=self.level,
            weight=self.weight,
            f=f,
            g=g,
            basis=basis,
            box=int(ex.get("box", 5)),
            samples=int(ex.get("samples", 100)),
            seed=int(ex.get("seed", 0)) if seed is None else seed,
            zero_constraints=[int(j) for j in ex.get("zero_constraints", [])],
            determines_function_field=bool(ex.get("determines_function_field", False)),
            threshold=ex.get("threshold", Fraction(1, 2)),
        )
