"""Shared test utilities, kept deliberately dumb.

The enumeration oracle here is the ground truth the library is judged
against: plain itertools over all assignments, no vectorization, no
shortcuts.
"""

import itertools

from goodnet import Network, Weight


def enumerate_optima(net: Network):
    """(gmax, sorted argmax list) by scanning every assignment."""
    best = None
    arg = []
    for bits in itertools.product((0, 1), repeat=net.n):
        g = net.goodness(bits)
        if best is None or g > best:
            best, arg = g, [bits]
        elif g == best:
            arg.append(bits)
    return best, sorted(arg)


def enumerate_hopfield_stable(net: Network):
    """All threshold-rule fixed points, by first principles."""
    stable = []
    for bits in itertools.product((0, 1), repeat=net.n):
        ok = True
        for i in net.nodes():
            field = sum(
                (w.micros if bits[j - 1] else 0) for j, w in net.neighbors(i)
            )
            want = 1 if field >= -net.bias(i).micros else 0
            if bits[i - 1] != want:
                ok = False
                break
        if ok:
            stable.append(bits)
    return sorted(stable)


def W(x: int) -> Weight:
    return Weight.from_int(x)


def D(text: str) -> Weight:
    return Weight.from_decimal(text)
