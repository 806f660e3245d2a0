#!/usr/bin/env python3
"""Convert the original real-world network files into wmodk edge lists.

Karate club (weighted and unweighted) comes from the copy of Zachary's data
shipped with networkx and is written into ``src/wmodk/data``.  The other
networks have to be downloaded by hand; pass their location with
``--raw DIR`` and the converted edge lists go to ``--out DIR`` (point
``WMODK_DATA_DIR`` there afterwards).

Expected raw files in DIR:

  dolphins.gml, football.gml, polbooks.gml, polblogs.gml   (M. Newman's netdata)
  out.ucidata-gama                                         (KONECT ucidata-gama)
  Stranke94.net                                            (Pajek, Slovene parliament parties)

Conventions: all graphs are made undirected; parallel edges are collapsed;
self-loops are dropped; Political blogs is reduced to its largest
connected component, which leaves the usual 1222 nodes.
"""
import argparse
import re
import sys
from pathlib import Path

import networkx as nx

ROOT = Path(__file__).resolve().parent.parent
BUNDLED = ROOT / "src" / "wmodk" / "data"


def write_graph(G, path, weighted):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# {G.number_of_nodes()} nodes, {G.number_of_edges()} edges\n")
        for u, v, d in G.edges(data=True):
            if weighted:
                w = d.get("weight", 1)
                w = int(w) if float(w).is_integer() else w
                fh.write(f"{u} {v} {w}\n")
            else:
                fh.write(f"{u} {v}\n")
    print(f"wrote {path} ({G.number_of_nodes()} nodes, {G.number_of_edges()} edges)")


def simple_undirected(G):
    H = nx.Graph()
    H.add_nodes_from(G.nodes())
    H.add_edges_from((u, v) for u, v in G.edges() if u != v)
    return H


def karate():
    G = nx.karate_club_graph()
    G = nx.relabel_nodes(G, {i: i + 1 for i in G.nodes()})
    write_graph(G, BUNDLED / "karate_weighted.txt", weighted=True)
    write_graph(G, BUNDLED / "karate.txt", weighted=False)


def read_gml(path):
    text = Path(path).read_text(encoding="utf-8", errors="replace")
    try:
        return nx.parse_gml(text, label="id")
    except nx.NetworkXError:
        # polblogs.gml lists some edges twice without declaring a multigraph
        return nx.parse_gml(re.sub(r"graph\s*\[", "graph [\n  multigraph 1", text, count=1), label="id")


def newman(raw, out, name):
    G = simple_undirected(read_gml(raw / f"{name}.gml"))
    if name == "polblogs":
        G = G.subgraph(max(nx.connected_components(G), key=len)).copy()
    write_graph(G, out / f"{name}.txt", weighted=False)


def gama(raw, out):
    G = nx.Graph()
    for line in (raw / "out.ucidata-gama").read_text().splitlines():
        if not line.strip() or line.startswith("%"):
            continue
        u, v, w = line.split()[:3]
        if u != v:
            G.add_edge(int(u), int(v), weight=int(float(w)))
    write_graph(G, out / "gahuku_gama.txt", weighted=True)


def slovene(raw, out):
    G = nx.read_pajek(raw / "Stranke94.net")
    H = nx.Graph()
    H.add_nodes_from(str(v).replace(" ", "_") for v in G.nodes())
    for u, v, d in G.edges(data=True):
        if u != v:
            H.add_edge(str(u).replace(" ", "_"), str(v).replace(" ", "_"), weight=float(d.get("weight", 1)))
    write_graph(H, out / "slovene.txt", weighted=True)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--raw", type=Path, help="directory with the downloaded original files")
    parser.add_argument("--out", type=Path, default=BUNDLED, help="where to write converted edge lists")
    args = parser.parse_args(argv)

    karate()
    if args.raw is None:
        return 0
    args.out.mkdir(parents=True, exist_ok=True)
    for name in ("dolphins", "football", "polbooks", "polblogs"):
        if (args.raw / f"{name}.gml").is_file():
            newman(args.raw, args.out, name)
        else:
            print(f"skipping {name}: {name}.gml not found", file=sys.stderr)
    if (args.raw / "out.ucidata-gama").is_file():
        gama(args.raw, args.out)
    if (args.raw / "Stranke94.net").is_file():
        slovene(args.raw, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
