#!/usr/bin/env python3
"""Independent RDF checks backed by rdflib.

  rdf_oracle.py sparql STORE.nq QUERY.rq   -> JSON {"boolean": b} or {"rows": [[...], ...]}
  rdf_oracle.py trig FILE.trig             -> JSON {"graphs": {iri: triple_count}}
  rdf_oracle.py batch JOBS.json            -> JSON list, one result per job

JOBS.json holds [["sparql", store, query] | ["trig", file], ...].
"""
import json
import sys

import rdflib


def term_json(t):
    if isinstance(t, rdflib.URIRef):
        return {"iri": str(t)}
    if isinstance(t, rdflib.Literal):
        out = {"literal": str(t)}
        if t.language:
            out["language"] = t.language
        else:
            out["datatype"] = str(t.datatype or rdflib.XSD.string)
        return out
    return {"blank": str(t)}


def sparql(store_path, query_path):
    ds = rdflib.Dataset()
    ds.parse(store_path, format="nquads")
    with open(query_path, encoding="utf-8") as f:
        query = f.read()
    result = ds.query(query)
    if result.type == "ASK":
        return {"boolean": bool(result.askAnswer)}
    rows = [[term_json(v) if v is not None else None for v in row] for row in result]
    return {"variables": [str(v) for v in result.vars], "rows": rows}


def trig(path):
    ds = rdflib.Dataset()
    ds.parse(path, format="trig")
    graphs = {}
    for g in ds.graphs():
        if len(g) and g.identifier != rdflib.graph.DATASET_DEFAULT_GRAPH_ID:
            graphs[str(g.identifier)] = len(g)
    return {"graphs": graphs}


def run_job(job):
    try:
        if job[0] == "sparql":
            return sparql(job[1], job[2])
        if job[0] == "trig":
            return trig(job[1])
        return {"error": "unknown job " + str(job[0])}
    except Exception as e:  # one bad file must not hide the others
        return {"error": str(e)}


def main(argv):
    if len(argv) == 3 and argv[1] == "batch":
        with open(argv[2], encoding="utf-8") as f:
            out = [run_job(j) for j in json.load(f)]
    elif len(argv) == 4 and argv[1] == "sparql":
        out = sparql(argv[2], argv[3])
    elif len(argv) == 3 and argv[1] == "trig":
        out = trig(argv[2])
    else:
        print(__doc__, file=sys.stderr)
        return 2
    json.dump(out, sys.stdout)
    sys.stdout.write("\n")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
