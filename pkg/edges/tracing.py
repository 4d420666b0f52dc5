"""Skeleton based wire geometry.

Blobs are thinned to a one pixel skeleton and turned into a pixel adjacency graph. Two
contacts are joined by the shortest skeleton path; blobs reaching more than two objects are
decomposed into branch-free arcs that meet at branch clusters.
"""
import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import networkx as nx
import numpy as np
from skimage.morphology import skeletonize

from edges.components import Blob
from edges.contacts import Contact
from schematics.models import Polyline, dedupe_points

logger = logging.getLogger(__name__)

Pixel = Tuple[int, int]

_ORTHOGONAL = ((1, 0), (0, 1))
_DIAGONAL = ((1, 1), (1, -1))
_SQRT2 = math.sqrt(2.0)


class TraceError(ValueError):
    pass


def skeleton_pixels(blob: Blob) -> List[Pixel]:
    x0, y0 = blob.bbox.xmin - 1, blob.bbox.ymin - 1
    canvas = np.zeros((blob.bbox.height + 2, blob.bbox.width + 2), dtype=bool)
    canvas[blob.pixels[:, 1] - y0, blob.pixels[:, 0] - x0] = True
    ys, xs = np.nonzero(skeletonize(canvas))
    if len(xs) == 0:
        logger.debug(f'skeleton_pixels:: blob {blob.id} thinned away, using its raw pixels')
        return [(x, y) for y, x in sorted((int(y), int(x)) for x, y in blob.pixels)]
    # np.nonzero walks rows first, so the list is in scanline order
    return [(int(x) + x0, int(y) + y0) for y, x in zip(ys, xs)]


def skeleton_graph(pixels: Sequence[Pixel]) -> nx.Graph:
    """8-neighbour graph; a diagonal step is only added when no 4-neighbour path of length 2 exists."""
    members = set(pixels)
    graph = nx.Graph()
    graph.add_nodes_from(pixels)
    for x, y in pixels:
        for dx, dy in _ORTHOGONAL:
            if (x + dx, y + dy) in members:
                graph.add_edge((x, y), (x + dx, y + dy), weight=1.0)
        for dx, dy in _DIAGONAL:
            other = (x + dx, y + dy)
            if other in members and (x + dx, y) not in members and (x, y + dy) not in members:
                graph.add_edge((x, y), other, weight=_SQRT2)
    return graph


def _nearest(pixels: Sequence[Pixel], point: Tuple[float, float]) -> Pixel:
    array = np.asarray(pixels, dtype=float)
    distances = np.hypot(array[:, 0] - point[0], array[:, 1] - point[1])
    return pixels[int(np.argmin(distances))]


def trace_polyline(blob: Blob, endpoints: Tuple[Tuple[int, int], Tuple[int, int]]) -> Polyline:
    start, end = (tuple(int(v) for v in p) for p in endpoints)
    if start == end:
        raise TraceError(f'blob {blob.id}: both endpoints are {start}')
    pixels = skeleton_pixels(blob)
    graph = skeleton_graph(pixels)
    source, target = _nearest(pixels, start), _nearest(pixels, end)
    try:
        path = nx.dijkstra_path(graph, source, target, weight='weight')
    except nx.NetworkXNoPath as e:
        raise TraceError(f'blob {blob.id}: {start} and {end} are not connected on the skeleton') from e
    return Polyline(points=dedupe_points([start, *path, end]))


@dataclass
class Arc:
    start: tuple
    end: tuple
    points: List[Tuple[float, float]] = field(default_factory=list)

    def ending_at(self, key) -> 'Arc':
        return self if self.end == key else Arc(self.end, self.start, self.points[::-1])

    def touches(self, key) -> bool:
        return key in (self.start, self.end)


@dataclass(frozen=True)
class BranchPoint:
    key: tuple
    point: Tuple[int, int]


@dataclass
class Decomposition:
    arcs: List[Arc]
    branch_points: Dict[tuple, BranchPoint]


def _contact_node(contact: Contact) -> tuple:
    return 'contact', contact.object_id


def decompose(blob: Blob, contacts: Sequence[Contact]) -> Decomposition:
    """Splits the blob skeleton into arcs between contacts and branch clusters.

    Arc ends are keyed ('contact', object_id) or ('branch', n). Spurs are pruned, branch
    clusters left with two arcs are dissolved into a single arc; every surviving branch has
    at least three arcs.
    """
    pixels = skeleton_pixels(blob)
    graph = skeleton_graph(pixels)
    points = {}
    for contact in contacts:
        node = _contact_node(contact)
        anchor = _nearest(pixels, contact.point)
        graph.add_edge(node, anchor, weight=math.dist(anchor, contact.point))
        points[node] = contact.point

    branch_pixels = [p for p in pixels if graph.degree(p) >= 3]
    cluster_of = {}
    clusters = list(nx.connected_components(graph.subgraph(branch_pixels)))
    clusters.sort(key=lambda members: min((y, x) for x, y in members))
    for index, members in enumerate(clusters):
        for pixel in members:
            cluster_of[pixel] = ('branch', index)

    def key_of(node):
        if node in points:
            return node
        if node in cluster_of:
            return cluster_of[node]
        if graph.degree(node) != 2:
            return 'tip', node
        return None

    arcs, walked = [], set()
    for node in list(graph.nodes):
        start_key = key_of(node)
        if start_key is None:
            continue
        for first in graph.neighbors(node):
            if frozenset((node, first)) in walked or key_of(first) == start_key and start_key[0] == 'branch':
                continue
            path, previous, current = [node, first], node, first
            while key_of(current) is None:
                previous, current = current, next(n for n in graph.neighbors(current) if n != previous)
                path.append(current)
            walked.add(frozenset(path[:2]))
            walked.add(frozenset(path[-2:]))
            arcs.append(Arc(start_key, key_of(current), [points.get(n, n) for n in path]))

    arcs = _prune(arcs)
    branch_points = {}
    for key in sorted({k for arc in arcs for k in (arc.start, arc.end) if k[0] == 'branch'}):
        members = clusters[key[1]]
        centroid = np.mean(np.asarray(sorted(members), dtype=float), axis=0)
        branch_points[key] = BranchPoint(key, _nearest(sorted(members), tuple(centroid)))
    for arc in arcs:
        arc.points = dedupe_points(
            ([branch_points[arc.start].point] if arc.start in branch_points else [])
            + arc.points
            + ([branch_points[arc.end].point] if arc.end in branch_points else []))
    return Decomposition([arc for arc in arcs if len(arc.points) >= 2], branch_points)


def _prune(arcs: List[Arc]) -> List[Arc]:
    arcs = [arc for arc in arcs if arc.start != arc.end]
    changed = True
    while changed:
        changed = False
        degree = Counter(k for arc in arcs for k in (arc.start, arc.end))
        weak = {k for k, d in degree.items() if k[0] == 'tip' or (k[0] == 'branch' and d <= 1)}
        if weak:
            arcs = [arc for arc in arcs if not (arc.start in weak or arc.end in weak)]
            changed = True
            continue
        for key, d in degree.items():
            if key[0] != 'branch' or d != 2:
                continue
            first, second = [arc for arc in arcs if arc.touches(key)]
            incoming, outgoing = first.ending_at(key), second.ending_at(key)
            merged = Arc(incoming.start, outgoing.start, incoming.points + outgoing.points[::-1])
            arcs = [arc for arc in arcs if arc is not first and arc is not second]
            if merged.start != merged.end:
                arcs.append(merged)
            changed = True
            break
    return arcs
