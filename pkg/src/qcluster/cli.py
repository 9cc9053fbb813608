"""Command line driver: run computations and verification suites, emit JSON.

Every command prints a single JSON document (schema field "schema": 1)
with sorted keys, so outputs are byte-stable for a fixed configuration
and seed.  Exit status 0 means success, 1 a failed check or computation,
2 a configuration problem.
"""

from __future__ import annotations

import argparse
import json
import multiprocessing
import random
import sys
from dataclasses import dataclass, fields
from typing import List, Optional, Sequence, Tuple

from .bicharacter import symmetrization
from .exchangesolver import (
    btilde_for_tau,
    first_column_crosscheck,
    quantum_matrix_btilde,
)
from .mutation import (
    Seed,
    compatibility_check,
    exchange_identity_holds,
    mutate_emat,
    mutate_matrix,
    mutate_seed,
    mutated_variable,
    random_compatible_pair,
    seed_from_pair,
)
from .orealgebra import (
    Presentation,
    leading_term,
    pbw_mul,
    presentation_from_dict,
    quantum_matrix_preset,
)
from .primeseq import (
    compute_primes,
    interval_prime,
    pi_f_data,
    rescale_generators,
    u_element,
)
from .qtorus import (
    check_frame_identity,
    frame_value,
    permutation_cols,
    reindex_frame,
)
from .scalarfield import Coeff, ScalarExp
from .schubertdata import (
    CartanData,
    exchange_matrix_for_word,
    frame_exponent_matrix,
    verify_word_compatibility,
    word_data,
)
from .xicombinatorics import (
    frame_for_tau,
    gamma_chain,
    gamma_chain_swaps,
    identity_frame,
    interval_frame,
    window_support_vector,
)

SCHEMA = 1

COMMANDS = (
    "primes",
    "intervals",
    "bmatrix",
    "frames",
    "mutate",
    "chain",
    "schubert",
    "verify",
)

PRESETS = ("quantum-matrices", "schubert", "custom")


class ConfigError(Exception):
    """Raised for problems with the requested configuration."""


@dataclass
class RunConfig:
    """Everything a run needs; mirrors the command line flags."""

    command: str
    preset: str = "quantum-matrices"
    m: int = 2
    n: int = 2
    type: str = "A"
    rank: int = 2
    word: Optional[Tuple[int, ...]] = None
    file: Optional[str] = None
    mutations: Tuple[int, ...] = ()
    out: Optional[str] = None
    seed: int = 0
    jobs: int = 1

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.preset not in PRESETS:
            raise ConfigError(f"unknown preset {self.preset!r}")
        if self.preset == "schubert" and self.command != "bmatrix":
            if self.command not in ("schubert", "verify"):
                raise ConfigError(
                    f"command {self.command!r} needs an algebra preset"
                )
        if self.preset == "schubert" and not self.word:
            raise ConfigError("schubert preset needs --word")
        if self.preset == "custom" and not self.file:
            raise ConfigError("custom preset needs --file")
        if self.command == "schubert" and self.preset != "schubert":
            raise ConfigError("the schubert command needs --preset schubert")
        if self.jobs < 1:
            raise ConfigError("--jobs must be at least 1")

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def load_presentation(config: RunConfig) -> Presentation:
    if config.preset == "quantum-matrices":
        if config.m < 1 or config.n < 1:
            raise ConfigError("--m and --n must be positive")
        return quantum_matrix_preset(config.m, config.n)
    if config.preset == "custom":
        try:
            with open(config.file) as fh:
                data = json.load(fh)
        except OSError as e:
            raise ConfigError(f"cannot read {config.file}: {e}")
        except json.JSONDecodeError as e:
            raise ConfigError(f"{config.file} is not valid JSON: {e}")
        try:
            return presentation_from_dict(data)
        except (KeyError, ValueError, TypeError) as e:
            raise ConfigError(f"bad presentation data: {e}")
    raise ConfigError(f"command {config.command!r} needs an algebra preset")


def cartan_for(config: RunConfig) -> CartanData:
    try:
        return CartanData(config.type, config.rank)
    except ValueError as e:
        raise ConfigError(str(e))


# -- serialization helpers ---------------------------------------------------


def term_list(elem) -> list:
    return [
        [list(f), repr(c)] for f, c in sorted(elem.terms.items())
    ]


def expmat_rows(emat) -> list:
    return [[str(x) for x in row] for row in emat.rows]


def bmat_dict(bmat) -> dict:
    return {
        "n_rows": bmat.n_rows,
        "columns": {str(k): list(col) for k, col in bmat.cols.items()},
    }


# -- command bodies ----------------------------------------------------------


def cmd_primes(config: RunConfig) -> dict:
    pres = load_presentation(config)
    seq = compute_primes(pres)
    ed = seq.eta_data
    primes = []
    for k in range(pres.n):
        primes.append(
            {
                "index": k,
                "name": pres.names[k],
                "terms": term_list(seq.y[k]),
                "normalized_terms": term_list(seq.ybar[k]),
                "recursion_coeff": repr(seq.c[k]) if k in seq.c else None,
            }
        )
    return {
        "eta": list(ed.eta),
        "pred": list(ed.p),
        "succ": list(ed.s),
        "rank": ed.rank(),
        "primes": primes,
    }


def cmd_intervals(config: RunConfig) -> dict:
    pres = load_presentation(config)
    seq = compute_primes(pres)
    ed = seq.eta_data
    entries = []
    for i in range(pres.n):
        m = 1
        while True:
            try:
                j = ed.succ_power(i, m)
            except ValueError:
                break
            pi, f = pi_f_data(pres, i, m)
            entries.append(
                {
                    "start": i,
                    "end": j,
                    "steps": m,
                    "prime_terms": term_list(interval_prime(pres, i, m)),
                    "u_terms": term_list(u_element(pres, i, m)),
                    "pi": repr(pi),
                    "f": list(f),
                }
            )
            m += 1
    return {"intervals": entries}


def cmd_bmatrix(config: RunConfig) -> dict:
    if config.preset == "schubert":
        cd = cartan_for(config)
        bmat = exchange_matrix_for_word(cd, config.word)
        report = verify_word_compatibility(cd, config.word)
        return {
            "bmatrix": bmat_dict(bmat),
            "crosscheck": bool(report.ok),
        }
    pres = load_presentation(config)
    bmat = btilde_for_tau(identity_frame(pres))
    crosscheck = None
    if config.preset == "quantum-matrices":
        crosscheck = bmat == quantum_matrix_btilde(config.m, config.n)
    return {"bmatrix": bmat_dict(bmat), "crosscheck": crosscheck}


def cmd_frames(config: RunConfig) -> dict:
    pres = load_presentation(config)
    seq = compute_primes(pres)
    out = []
    for tau in gamma_chain(pres.n):
        tp = frame_for_tau(pres, tau, seq)
        out.append(
            {
                "tau": list(tau),
                "sigma": list(tp.sigma),
                "exchangeable": list(tp.ex),
                "images": [term_list(img) for img in tp.frame.images],
                "exponents": expmat_rows(tp.frame.emat),
            }
        )
    return {"frames": out}


def cmd_mutate(config: RunConfig) -> dict:
    pres = load_presentation(config)
    tp = identity_frame(pres)
    seed = Seed(tp.frame, btilde_for_tau(tp))
    trace = []
    for k in config.mutations:
        if k not in seed.bmat.cols:
            raise ConfigError(f"direction {k} is not exchangeable")
        seed = mutate_seed(seed, k, check=True)
        trace.append(
            {
                "direction": k,
                "variable": term_list(seed.frame.images[k]),
                "bmatrix": bmat_dict(seed.bmat),
            }
        )
    return {
        "initial_bmatrix": bmat_dict(btilde_for_tau(tp)),
        "trace": trace,
    }


def chain_walk(pres: Presentation):
    """Verify the one-step laws along the canonical permutation chain.

    Returns a list of step records; raises AssertionError on a violation.
    """
    seq = compute_primes(pres)
    taus = gamma_chain(pres.n)
    swaps = gamma_chain_swaps(pres.n)
    frames = [frame_for_tau(pres, tau, seq) for tau in taus]
    steps = []
    for t, pos in enumerate(swaps):
        tp, tq = frames[t], frames[t + 1]
        bt = btilde_for_tau(tp)
        if tp.eta_tau[pos] != tp.eta_tau[pos + 1]:
            assert tp.frame.images == tq.frame.images, f"step {t}: images moved"
            assert tp.frame.emat == tq.frame.emat, f"step {t}: exponents moved"
            assert bt == btilde_for_tau(tq), f"step {t}: matrix moved"
            steps.append({"step": t, "mutated_at": None})
            continue
        kb = tp.sigma[pos]
        for j in range(pres.n):
            if j != kb:
                assert tp.frame.images[j] == tq.frame.images[j], (
                    f"step {t}: image {j} moved"
                )
        assert exchange_identity_holds(
            tp.frame, bt.cols[kb], kb, tq.frame.images[kb]
        ), f"step {t}: exchange relation fails at {kb}"
        assert mutate_emat(tp.frame.emat, bt, kb) == tq.frame.emat, (
            f"step {t}: exponent matrix does not mutate to the next frame"
        )
        assert mutate_matrix(bt, kb)[0] == btilde_for_tau(tq), (
            f"step {t}: exchange matrix does not mutate to the next frame"
        )
        steps.append({"step": t, "mutated_at": kb})
    return steps


def cmd_chain(config: RunConfig) -> dict:
    pres = load_presentation(config)
    steps = chain_walk(pres)
    return {
        "steps": steps,
        "mutations": sum(1 for s in steps if s["mutated_at"] is not None),
    }


def cmd_schubert(config: RunConfig) -> dict:
    cd = cartan_for(config)
    try:
        data = word_data(cd, config.word)
    except ValueError as e:
        raise ConfigError(str(e))
    report = verify_word_compatibility(cd, config.word)
    return {
        "type": f"{cd.letter}{cd.rank}",
        "word": list(config.word),
        "roots": [list(b) for b in data.roots],
        "lengths": list(data.lengths),
        "bmatrix": bmat_dict(exchange_matrix_for_word(cd, config.word)),
        "rmatrix": expmat_rows(frame_exponent_matrix(cd, config.word)),
        "report": {
            "ok": report.ok,
            "columns": list(report.columns),
            "pairing_failures": [list(x) for x in report.pairing_failures],
            "grading_failures": list(report.grading_failures),
            "symmetrizable": report.symmetrizable,
        },
    }


# -- the verify suite --------------------------------------------------------


def _check_primes(config: RunConfig):
    pres = load_presentation(config)
    seq = compute_primes(pres)
    ed = seq.eta_data
    for k in range(pres.n):
        f, c = leading_term(seq.y[k])
        assert f == ed.ebar[k], f"prime {k} has the wrong leading monomial"
        assert c.is_one, f"prime {k} is not monic"
    if pres.eta is not None:
        assert ed.same_partition(pres.eta), "level sets disagree"
    if config.preset == "quantum-matrices":
        assert ed.rank() == config.m + config.n - 1, "wrong number of chains"


def _check_intervals(config: RunConfig):
    pres = load_presentation(config)
    seq = compute_primes(pres)
    ed = seq.eta_data
    if config.preset == "quantum-matrices":
        n = config.n
        q = Coeff.q_power(1, pres.root)
        for i in range(pres.n):
            if ed.s[i] is None:
                continue
            want = pbw_mul(pres.gen(i + 1), pres.gen(i + n)).scaled(q)
            assert u_element(pres, i, 1) == want, f"u at {i} is off"
            pi, f = pi_f_data(pres, i, 1)
            assert pi == q, f"leading coefficient at {i} is off"
            expect_f = [0] * pres.n
            expect_f[i + 1] += 1
            expect_f[i + n] += 1
            assert list(f) == expect_f, f"leading exponent at {i} is off"
    gamma, _, _ = rescale_generators(pres)
    if config.preset == "quantum-matrices":
        assert all(g.is_one for g in gamma), "rescaling is not trivial"


def _check_bmatrix(config: RunConfig):
    pres = load_presentation(config)
    bmat = btilde_for_tau(identity_frame(pres))
    if config.preset == "quantum-matrices":
        assert bmat == quantum_matrix_btilde(config.m, config.n), (
            "solved matrix differs from the closed form"
        )


def _check_exchange(config: RunConfig):
    pres = load_presentation(config)
    tp = identity_frame(pres)
    bmat = btilde_for_tau(tp)
    for k in bmat.ex:
        var = mutated_variable(tp.frame, bmat.cols[k], k)
        assert exchange_identity_holds(tp.frame, bmat.cols[k], k, var)
    if config.preset == "quantum-matrices" and (config.m, config.n) == (2, 2):
        var = mutated_variable(tp.frame, bmat.cols[0], 0)
        assert var == pres.gen(3), "2x2 mutation should produce the last generator"


def _check_chain(config: RunConfig):
    pres = load_presentation(config)
    chain_walk(pres)


def _check_coverage(config: RunConfig):
    pres = load_presentation(config)
    seq = compute_primes(pres)
    found = [False] * pres.n
    for tau in gamma_chain(pres.n):
        tp = frame_for_tau(pres, tau, seq)
        for img in tp.frame.images:
            for k in range(pres.n):
                if not found[k] and img == pres.gen(k):
                    found[k] = True
    missing = [k for k in range(pres.n) if not found[k]]
    assert not missing, f"generators {missing} never appear as cluster variables"


def _check_interval_identity(config: RunConfig):
    pres = load_presentation(config)
    seq = compute_primes(pres)
    ed = seq.eta_data
    nu = pres.nu()
    checked = 0
    for i in range(pres.n):
        m = 1
        while True:
            try:
                top = ed.succ_power(i, m)
            except ValueError:
                break
            fr = interval_frame(pres, i, m)
            w = top - i + 1
            pi, f = pi_f_data(pres, i, m)
            g = window_support_vector(pres, i, m, f)
            v1 = [0] * w
            v1[0] -= 1
            v1[-1] += 1
            if m > 1:
                v1[ed.succ_power(i, m - 1) - i] += 1
            v2 = list(g)
            v2[0] -= 1
            sub = interval_prime(pres, ed.s[i], m - 1)
            target = sub.scaled(
                symmetrization(nu, ed.interval_vector(ed.s[i], top))
            )
            combos = [(ScalarExp(0), tuple(v1)), (ScalarExp(0), tuple(v2))]
            assert check_frame_identity(fr, target, combos), (
                f"interval identity fails at ({i},{m})"
            )
            u = u_element(pres, i, m)
            dec = frame_value(fr, g).scaled(
                symmetrization(nu, f).inv()
            ).scaled(pi)
            assert u == dec, f"u decomposition fails at ({i},{m})"
            checked += 1
            m += 1
    return checked


def _check_first_column(config: RunConfig):
    pres = load_presentation(config)
    seq = compute_primes(pres)
    ed = seq.eta_data
    for i in range(pres.n):
        if ed.s[i] is None:
            continue
        assert first_column_crosscheck(pres, i), f"first-column check fails at {i}"


def _check_mutation_suite(config: RunConfig):
    rng = random.Random(config.seed)
    for _ in range(25):
        n = rng.randint(1, 4)
        emat, bmat, _ = random_compatible_pair(rng, n)
        diag = compatibility_check(emat, bmat)
        seed = seed_from_pair(emat, bmat)
        k = rng.choice(bmat.ex)
        s1 = mutate_seed(seed, k, check=True)
        assert compatibility_check(s1.frame.emat, s1.bmat) == diag
        s2 = mutate_seed(s1, k, check=True)
        assert s2.bmat == seed.bmat
        assert s2.frame.emat == seed.frame.emat
        assert all(a == b for a, b in zip(s2.frame.images, seed.frame.images))
        perm = list(range(2 * n))
        rng.shuffle(perm)
        re = reindex_frame(seed.frame, permutation_cols(perm))
        g = tuple(rng.randint(-2, 2) for _ in range(2 * n))
        moved = tuple(g[perm[t]] for t in range(2 * n))
        assert frame_value(re, moved) == frame_value(seed.frame, g)


def _check_schubert_word(config: RunConfig):
    cd = cartan_for(config)
    report = verify_word_compatibility(cd, config.word)
    assert report.ok, (
        f"compatibility fails: pairings {report.pairing_failures}, "
        f"gradings {report.grading_failures}"
    )


_CHECKS = {
    "primes": _check_primes,
    "intervals": _check_intervals,
    "bmatrix": _check_bmatrix,
    "exchange": _check_exchange,
    "chain": _check_chain,
    "coverage": _check_coverage,
    "interval-identity": _check_interval_identity,
    "first-column": _check_first_column,
    "mutation-suite": _check_mutation_suite,
    "schubert-word": _check_schubert_word,
}


def verify_names(config: RunConfig) -> List[str]:
    if config.preset == "schubert":
        return ["schubert-word"]
    names = [
        "primes",
        "intervals",
        "bmatrix",
        "exchange",
        "chain",
        "coverage",
        "interval-identity",
        "first-column",
        "mutation-suite",
    ]
    if config.preset == "custom":
        pres = load_presentation(config)
        if not pres.symmetric:
            names = ["primes", "bmatrix", "mutation-suite"]
    return names


def _run_check(args) -> Tuple[str, str]:
    cfg, name = args
    config = RunConfig(**cfg)
    try:
        _CHECKS[name](config)
    except AssertionError as e:
        return name, f"fail: {e}" if str(e) else "fail"
    except Exception as e:  # a crash is still a failed check
        return name, f"fail: {type(e).__name__}: {e}"
    return name, "pass"


def cmd_verify(config: RunConfig) -> dict:
    names = verify_names(config)
    jobs = [(config.as_dict(), name) for name in names]
    if config.jobs > 1 and len(names) > 1:
        with multiprocessing.Pool(min(config.jobs, len(names))) as pool:
            results = pool.map(_run_check, jobs)
    else:
        results = [_run_check(j) for j in jobs]
    checks = dict(sorted(results))
    return {"checks": checks, "ok": all(v == "pass" for v in checks.values())}


# -- driver ------------------------------------------------------------------


def run(config: RunConfig):
    """Execute one command; returns (exit status, payload dict)."""
    body = {
        "primes": cmd_primes,
        "intervals": cmd_intervals,
        "bmatrix": cmd_bmatrix,
        "frames": cmd_frames,
        "mutate": cmd_mutate,
        "chain": cmd_chain,
        "schubert": cmd_schubert,
        "verify": cmd_verify,
    }[config.command]
    payload = {"schema": SCHEMA, "command": config.command, "preset": config.preset}
    if config.preset == "quantum-matrices":
        payload["shape"] = [config.m, config.n]
    try:
        payload.update(body(config))
    except ConfigError:
        raise
    except AssertionError as e:
        payload["error"] = str(e) or "check failed"
        return 1, payload
    except (ValueError, ZeroDivisionError) as e:
        payload["error"] = f"{type(e).__name__}: {e}"
        return 1, payload
    code = 0
    if config.command == "verify" and not payload.get("ok"):
        code = 1
    if config.command == "schubert" and not payload["report"]["ok"]:
        code = 1
    if config.command == "bmatrix" and payload.get("crosscheck") is False:
        code = 1
    return code, payload


def emit(payload: dict, out: Optional[str]):
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qcluster",
        description=(
            "Exact quantum cluster algebra computations on iterated skew "
            "polynomial algebras."
        ),
    )
    p.add_argument("--cmd", required=True, choices=COMMANDS, help="what to run")
    p.add_argument("--preset", default="quantum-matrices", choices=PRESETS)
    p.add_argument("--m", type=int, default=2, help="matrix rows")
    p.add_argument("--n", type=int, default=2, help="matrix columns")
    p.add_argument("--type", default="A", help="root system letter")
    p.add_argument("--rank", type=int, default=2, help="root system rank")
    p.add_argument("--word", type=int, nargs="+", help="reduced word letters")
    p.add_argument("--file", help="custom presentation JSON file")
    p.add_argument(
        "--mutations", type=int, nargs="+", default=[],
        help="mutation directions for --cmd mutate",
    )
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.add_argument("--seed", type=int, default=0, help="seed for random cases")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(
            command=args.cmd,
            preset=args.preset,
            m=args.m,
            n=args.n,
            type=args.type,
            rank=args.rank,
            word=tuple(args.word) if args.word else None,
            file=args.file,
            mutations=tuple(args.mutations),
            out=args.out,
            seed=args.seed,
            jobs=args.jobs,
        )
        code, payload = run(config)
    except ConfigError as e:
        print(f"qcluster: {e}", file=sys.stderr)
        return 2
    emit(payload, config.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
