from __future__ import annotations

from .graph import SprawlGraph

WHITE, SEEN, ELIMINATED = 0, 1, 2
UNSET = float("inf")


class TraversalState:
    """Per-query scratch space with O(1) reset.

    Every slot carries the generation that wrote it; a slot from an older
    generation reads as its default.  ``reset`` just bumps the generation.
    """

    def __init__(self, g: SprawlGraph):
        n, nr = g.n, len(g.regions)
        self.graph = g
        self.generation = 1
        self.p_stamp = [0] * n
        self.color = [WHITE] * n
        self.dist: list = [None] * n
        self.disc = [UNSET] * n  # kNN: min lower bound among discovering regions
        self.elim = [0.0] * n  # kNN: max lower bound among regions that failed to eliminate
        self.seq = [0] * n
        self.r_stamp = [0] * nr
        self.count = [0] * nr
        self.queue: list = []
        self.results: list = []
        self.radius = UNSET
        self.eliminated = 0

    def reset(self) -> None:
        self.generation += 1
        self.queue.clear()
        self.results.clear()
        self.radius = UNSET
        self.eliminated = 0

    def touch(self, u: int) -> None:
        if self.p_stamp[u] != self.generation:
            self.p_stamp[u] = self.generation
            self.color[u] = WHITE
            self.dist[u] = None
            self.disc[u] = UNSET
            self.elim[u] = 0.0
            self.seq[u] = 0

    def color_of(self, u: int) -> int:
        return self.color[u] if self.p_stamp[u] == self.generation else WHITE

    def dist_of(self, u: int):
        return self.dist[u] if self.p_stamp[u] == self.generation else None

    def bump(self, rid: int) -> int:
        """Increment a region's parent counter and return the new value."""
        if self.r_stamp[rid] != self.generation:
            self.r_stamp[rid] = self.generation
            self.count[rid] = 0
        self.count[rid] += 1
        return self.count[rid]

    def count_of(self, rid: int) -> int:
        return self.count[rid] if self.r_stamp[rid] == self.generation else 0


def reset(state: TraversalState) -> None:
    state.reset()


def eliminate(state: TraversalState, u: int) -> bool:
    """Color a not-yet-visited point black. Returns whether anything changed."""
    state.touch(u)
    if state.color[u] != WHITE:
        return False
    state.color[u] = ELIMINATED
    state.eliminated += 1
    return True
