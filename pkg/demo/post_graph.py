#!/usr/bin/env python3
"""
demo/post_graph.py

Usage:
  PYTHONPATH=. python demo/post_graph.py demo/graphs/k23.txt --path-cover
  PYTHONPATH=. python demo/post_graph.py --family c4_bouquet:2

POSTs one graph to /api/graphs/compute on a running server and prints the
parameters and verdicts. Edge-list files are read with the same parser the CLI uses.
"""
import argparse
import json
import os
import sys

import httpx

from app.storage.graph_files import read_graphs

DEFAULT_BASE = "http://localhost:8000"


def build_payload(path=None, family=None, method="bruteforce", path_cover=False):
    payload = {"method": method, "path_cover": path_cover}
    if family:
        payload["family"] = family
        return payload
    [g] = read_graphs(path)
    payload["n"] = g.n
    payload["edges"] = [list(e) for e in g.edges]
    return payload


def post_compute(base_url, payload):
    url = f"{base_url.rstrip('/')}/api/graphs/compute"
    resp = httpx.post(url, json=payload, timeout=60)
    if resp.status_code >= 400:
        print(f"[error] {resp.status_code}: {resp.json().get('detail')}")
        return None
    return resp.json()


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("input", nargs="?")
    parser.add_argument("--family", default=None)
    parser.add_argument("--method", default="bruteforce", choices=["formula", "bruteforce", "both"])
    parser.add_argument("--path-cover", action="store_true")
    parser.add_argument("--base", default=os.environ.get("BASE_URL", DEFAULT_BASE))
    args = parser.parse_args()
    if not args.input and not args.family:
        parser.error("give an edge-list file or --family")

    payload = build_payload(args.input, args.family, args.method, args.path_cover)
    print(f"[info] POST {args.base}/api/graphs/compute payload={json.dumps(payload)}")
    report = post_compute(args.base, payload)
    if report is None:
        sys.exit(1)
    print(f"[info] {report['graph_class']} n={report['n']} dim={report['dim']} Z={report['Z']} P={report['P']}")
    for verdict in report["verdicts"]:
        print(f"  [{verdict['status']:>4}] {verdict['check']}: {verdict['statement']}")


if __name__ == "__main__":
    main()
