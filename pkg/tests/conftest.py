import random

from hypothesis import strategies as st

from medial.terms import Leaf, Node, leaf_positions
from medial.totalcolor import shapes

# criterion lines collected by the acceptance suite
ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


VARS = ["x", "y", "z", "t"]


def term_strategy(max_leaves: int = 7, names=VARS):
    """Random terms with at most ``max_leaves`` leaves over ``names``."""
    leaf = st.sampled_from(names).map(Leaf)

    @st.composite
    def build(draw, n=None):
        n = draw(st.integers(1, max_leaves)) if n is None else n
        if n == 1:
            return draw(leaf)
        k = draw(st.integers(1, n - 1))
        return Node(draw(build(k)), draw(build(n - k)))

    return build()


def random_term(rng: random.Random, n: int, names=VARS):
    if n == 1:
        return Leaf(rng.choice(names))
    k = rng.randint(1, n - 1)
    return Node(random_term(rng, k, names), random_term(rng, n - k, names))


def all_shapes(lo: int, hi: int):
    for n in range(lo, hi + 1):
        yield from shapes(n)


def identity_corpus(size: int, seed: int = 0, max_rank: int = 7):
    """Identities mixing unrelated pairs, leaf shuffles and short rewrite
    chains from the finite bases, so both verdicts occur often."""
    from medial.rewrite import MUTATION_LAWS, TABLE1, one_step_rewrites
    from medial.terms import Identity, rank

    rng = random.Random(seed)
    rows = [MUTATION_LAWS] + list(TABLE1.values())
    out = []
    while len(out) < size:
        names = VARS[: rng.randint(1, 4)]
        lhs = random_term(rng, rng.randint(2, max_rank), names)
        mode = len(out) % 4
        rhs = None
        if mode == 1:
            leaves = [n for _, n in leaf_positions(lhs)]
            rng.shuffle(leaves)
            it = iter(leaves)
            rhs = _rename_leaves(lhs, it)
        elif mode in (2, 3):
            rules = rng.choice(rows)
            cur = lhs
            for _ in range(rng.randint(1, 3)):
                succ = [u for u, _ in one_step_rewrites(cur, rules) if rank(u) <= max_rank and u != cur]
                if not succ:
                    break
                cur = rng.choice(succ)
            rhs = cur
        if rhs is None or rhs == lhs:
            rhs = random_term(rng, rng.randint(1, max_rank), names)
        out.append(Identity(lhs, rhs))
    return out


def _rename_leaves(u, it):
    if isinstance(u, Leaf):
        return Leaf(next(it))
    left = _rename_leaves(u.left, it)
    return Node(left, _rename_leaves(u.right, it))
