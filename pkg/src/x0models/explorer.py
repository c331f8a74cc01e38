"""Sample h = sum lambda_j b_j over a family of forms and census (deg C, d).

Every sample lies outside span(f, g).  Degrees come from the minimal relation
and the pole degree of g/f, which is computed once for the whole run.
"""

from __future__ import annotations

import csv
import io
import logging
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from .degrees import DegreeError, degree_report, pole_degree
from .forms import Form, FormError, independent
from .relation import HomogPoly3, RelationError

log = logging.getLogger(__name__)

CSV_HEADER = ["index", "lambda", "deg_C", "d", "pole_degree", "deg_y_Q", "checks_passed"]


class ExplorerError(ValueError):
    pass


@dataclass
class FamilyConfig:
    level: int
    weight: int
    f: str
    g: str
    basis: list[str]
    box: int = 5
    samples: int = 100
    seed: int = 0
    zero_constraints: list[int] = field(default_factory=list)
    determines_function_field: bool = False
    threshold: Fraction = Fraction(1, 2)

    def validate(self) -> None:
        if len(self.basis) < 3:
            raise ExplorerError("family needs at least three basis forms")
        if self.basis[0] != self.f or self.basis[1] != self.g:
            raise ExplorerError("basis must start with f, g")
        if len(set(self.basis)) != len(self.basis):
            raise ExplorerError("basis names must be distinct")
        if self.box < 1:
            raise ExplorerError("empty sample box")
        if self.samples < 1:
            raise ExplorerError("samples must be positive")
        if not 0 <= self.seed < 2 ** 64:
            raise ExplorerError("seed must be a 64-bit unsigned integer")
        for j in self.zero_constraints:
            if not 0 <= j < len(self.basis):
                raise ExplorerError(f"zero constraint index {j} out of range")
        if all(j in self.zero_constraints for j in range(2, len(self.basis))):
            raise ExplorerError("zero constraints leave no direction outside span(f, g)")


@dataclass
class SampleRecord:
    index: int
    lam: tuple[int, ...]
    deg_C: int | None
    d: int | None
    pole_degree: int
    deg_y_Q: int | None
    relation_coeff_count: int | None
    checks_passed: bool
    error: str | None = None
    polynomial: HomogPoly3 | None = field(default=None, compare=False)

    def csv_row(self) -> list[str]:
        def s(x):
            return "" if x is None else str(x)

        return [
            str(self.index), ";".join(map(str, self.lam)), s(self.deg_C), s(self.d),
            str(self.pole_degree), s(self.deg_y_Q), "true" if self.checks_passed else "false",
        ]


@dataclass
class FamilySummary:
    samples: int
    failures: int
    pole_degree: int
    census_X: dict[int, int]
    census_Z: dict[int, int]
    L_max: int
    frac_L_max: float
    frac_birational_at_L_max: float
    min_d_per_X: dict[int, int]
    divisor_check: bool
    x1_empty: bool

    def genericity(self, threshold: Fraction | float) -> bool:
        return self.frac_birational_at_L_max >= threshold

    def to_json(self) -> dict:
        out = asdict(self)
        for key in ("census_X", "census_Z", "min_d_per_X"):
            out[key] = {str(k): v for k, v in out[key].items()}
        return out


def sample_lambdas(config: FamilyConfig) -> Iterator[tuple[int, ...]]:
    """Deterministic stream of integer coefficient vectors for ``config.seed``.

    Duplicates and scalar multiples of earlier vectors are not filtered.
    """
    if config.box < 1:
        raise ExplorerError("empty sample box")
    config.validate()
    rng = random.Random(config.seed)
    s = len(config.basis)
    zero = set(config.zero_constraints)
    while True:
        lam = [0 if j in zero else rng.randint(-config.box, config.box) for j in range(s)]
        if any(lam[2:]):
            yield tuple(lam)


def _evaluate(args) -> SampleRecord:
    index, lam, basis, pole, slack = args
    h = Form.combine(zip(lam, basis), name=f"h{index}")
    f, g = basis[0], basis[1]
    try:
        rep = degree_report(f, g, h, slack=slack, pole=pole)
    except (RelationError, DegreeError, FormError, ArithmeticError) as exc:
        return SampleRecord(index, lam, None, None, pole, None, None, False, str(exc))
    return SampleRecord(
        index, lam, rep.deg_C, rep.d, pole, rep.deg_y_Q, len(rep.polynomial.terms), rep.ok,
        None if rep.ok else f"failed checks: {[k for k, v in rep.checks.items() if not v]}",
        rep.polynomial,
    )


def run_family(config: FamilyConfig, forms: Mapping[str, Form], *, workers: int | None = None,
               slack: int = 0) -> tuple[list[SampleRecord], FamilySummary]:
    config.validate()
    try:
        basis = [forms[name] for name in config.basis]
    except KeyError as exc:
        raise ExplorerError(f"unknown form {exc.args[0]!r} in basis") from None
    for b in basis:
        if b.level != config.level or b.weight != config.weight:
            raise ExplorerError(f"form {b.name!r} is not in M_{config.weight}(Gamma_0({config.level}))")
    if not independent(basis[:2], config.level, config.weight):
        raise ExplorerError("f and g are not independent")
    pole = pole_degree(basis[0], basis[1])
    stream = sample_lambdas(config)
    jobs = [(i, next(stream), basis, pole, slack) for i in range(config.samples)]
    workers = workers or os.cpu_count() or 1
    if workers == 1:
        records = [_evaluate(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_evaluate, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    records.sort(key=lambda r: r.index)
    for r in records:
        if r.error:
            log.warning("sample %d (lambda=%s): %s", r.index, r.lam, r.error)
    return records, summarize(records)


def summarize(records: Sequence[SampleRecord]) -> FamilySummary:
    if not records:
        raise ExplorerError("no samples")
    good = [r for r in records if r.checks_passed and r.deg_C is not None]
    if not good:
        raise ExplorerError("no successful samples")
    census_X: dict[int, int] = {}
    census_Z: dict[int, int] = {}
    min_d: dict[int, int] = {}
    for r in good:
        census_X[r.deg_C] = census_X.get(r.deg_C, 0) + 1
        census_Z[r.d] = census_Z.get(r.d, 0) + 1
        min_d[r.deg_C] = min(min_d.get(r.deg_C, r.d), r.d)
    L = max(census_X)
    n = len(records)
    top = sum(1 for r in good if r.deg_C == L)
    top_bir = sum(1 for r in good if r.deg_C == L and r.d == 1)
    pole = good[0].pole_degree
    return FamilySummary(
        samples=n,
        failures=n - len(good),
        pole_degree=pole,
        census_X=dict(sorted(census_X.items())),
        census_Z=dict(sorted(census_Z.items())),
        L_max=L,
        frac_L_max=top / n,
        frac_birational_at_L_max=top_bir / n,
        min_d_per_X=dict(sorted(min_d.items())),
        divisor_check=all(r.pole_degree % r.d == 0 for r in good),
        x1_empty=1 not in census_X,
    )


def records_csv(records: Sequence[SampleRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow(r.csv_row())
    return buf.getvalue()
