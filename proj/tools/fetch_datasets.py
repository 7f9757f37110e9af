#!/usr/bin/env python3
"""Write the real-world benchmark networks as edge lists.

Karate club and Les Miserables come from networkx's built-in copies. The
American college football network is downloaded from Mark Newman's network
data page. Files land in $ZMOD_DATA_DIR (default: ./data):

    karate.edges      34 vertices, 78 edges, labels 1..34
    karate.truth      club split after the conflict (Mr. Hi / Officer)
    lesmis.edges      77 vertices, 254 edges, character names
    football.edges    115 vertices, 613 edges
    football.truth    conference membership

Each file's SHA-256 is printed and checked against tools/datasets.sha256
when that file lists it; a mismatch is reported on stderr and makes the
script exit nonzero.
"""

import argparse
import hashlib
import io
import os
import sys
import urllib.request
import zipfile

FOOTBALL_URL = "http://www-personal.umich.edu/~mejn/netdata/football.zip"
SUMS = os.path.join(os.path.dirname(os.path.abspath(__file__)), "datasets.sha256")
mismatches = []


def known_digests():
    try:
        with open(SUMS, encoding="utf-8") as f:
            return dict(reversed(line.split()) for line in f if line.strip())
    except OSError:
        return {}


def write(path, lines):
    text = "".join(line + "\n" for line in lines)
    with open(path, "w", encoding="utf-8") as out:
        out.write(text)
    digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
    name = os.path.basename(path)
    print(f"{digest}  {name}")
    expected = known_digests().get(name)
    if expected and expected != digest:
        print(f"{name}: checksum differs from {SUMS}", file=sys.stderr)
        mismatches.append(name)


def edge_lines(graph, name=str):
    return [f"{name(u)} {name(v)}" for u, v in sorted(graph.edges(), key=lambda e: (str(e[0]), str(e[1])))]


def karate(nx, outdir):
    g = nx.karate_club_graph()
    label = lambda v: str(v + 1)
    write(os.path.join(outdir, "karate.edges"), edge_lines(g, label))
    truth = [f"{label(v)} {0 if g.nodes[v]['club'] == 'Mr. Hi' else 1}" for v in sorted(g.nodes())]
    write(os.path.join(outdir, "karate.truth"), truth)


def lesmis(nx, outdir):
    g = nx.les_miserables_graph()
    name = lambda v: v.replace(" ", "_")
    write(os.path.join(outdir, "lesmis.edges"), edge_lines(g, name))


def football(nx, outdir):
    try:
        blob = urllib.request.urlopen(FOOTBALL_URL, timeout=30).read()
    except OSError as err:
        print(f"football: download failed ({err}); skipped", file=sys.stderr)
        return
    gml = zipfile.ZipFile(io.BytesIO(blob)).read("football.gml").decode()
    # The distributed file has a malformed header line that networkx rejects.
    gml = "\n".join(gml.split("\n")[1:]) if gml.startswith("Creator") else gml
    g = nx.parse_gml(gml, label="id")
    label = lambda v: str(v + 1)
    write(os.path.join(outdir, "football.edges"), edge_lines(g, label))
    truth = [f"{label(v)} {g.nodes[v]['value']}" for v in sorted(g.nodes())]
    write(os.path.join(outdir, "football.truth"), truth)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default=os.environ.get("ZMOD_DATA_DIR", "data"))
    parser.add_argument("--skip-download", action="store_true", help="only write the networkx datasets")
    args = parser.parse_args()

    try:
        import networkx as nx
    except ImportError:
        sys.exit("networkx is required: pip install networkx")

    os.makedirs(args.out, exist_ok=True)
    karate(nx, args.out)
    lesmis(nx, args.out)
    if not args.skip_download:
        football(nx, args.out)
    if mismatches:
        sys.exit(1)


if __name__ == "__main__":
    main()
