#!/usr/bin/env python3
"""Write synthetic single-mode networks in PSPLIB j30 layout.

Two families: "wide" (few long layers) and "deep" (many short layers).
Output is deterministic for a fixed --seed.
"""
import argparse
import pathlib
import random

REAL_JOBS = 30
RESOURCES = 4
RULE = "*" * 72


def layers_for(family, rng):
    if family == "wide":
        sizes = [rng.randint(6, 10) for _ in range(4)]
    else:
        sizes = [rng.randint(2, 3) for _ in range(12)]
    # rescale to exactly REAL_JOBS jobs
    while sum(sizes) > REAL_JOBS:
        i = max(range(len(sizes)), key=lambda k: sizes[k])
        sizes[i] -= 1
    while sum(sizes) < REAL_JOBS:
        sizes[rng.randrange(len(sizes))] += 1
    return sizes


def network(family, rng):
    sizes = layers_for(family, rng)
    layers, next_id = [], 2  # file job 1 is the dummy source
    for size in sizes:
        layers.append(list(range(next_id, next_id + size)))
        next_id += size
    sink = next_id
    succ = {1: list(layers[0]), sink: []}
    for li, layer in enumerate(layers):
        nxt = layers[li + 1] if li + 1 < len(layers) else None
        for j in layer:
            if nxt is None:
                succ[j] = [sink]
            else:
                k = rng.randint(1, min(3, len(nxt)))
                succ[j] = sorted(rng.sample(nxt, k))
        if nxt is not None:
            # every job of the next layer gets a predecessor
            for j in nxt:
                if not any(j in succ[i] for i in layer):
                    succ[rng.choice(layer)].append(j)
    for j in succ:
        succ[j] = sorted(set(succ[j]))
    durations = {1: 0, sink: 0}
    requests = {1: [0] * RESOURCES, sink: [0] * RESOURCES}
    for layer in layers:
        for j in layer:
            durations[j] = rng.randint(1, 10)
            req = [0] * RESOURCES
            for k in rng.sample(range(RESOURCES), rng.randint(1, 2)):
                req[k] = rng.randint(1, 10)
            requests[j] = req
    capacities = []
    for k in range(RESOURCES):
        peak = max(requests[j][k] for j in requests)
        capacities.append(max(peak, 1) + rng.randint(0, 6))
    return sink, succ, durations, requests, capacities


def render(name, sink, succ, durations, requests, capacities, seed):
    horizon = sum(durations.values())
    out = [RULE,
           f"file with basedata            : {name}.bas",
           f"initial value random generator: {seed}",
           RULE,
           "projects                      :  1",
           f"jobs (incl. supersource/sink ):  {sink}",
           f"horizon                       :  {horizon}",
           "RESOURCES",
           f"  - renewable                 :  {RESOURCES}   R",
           "  - nonrenewable              :  0   N",
           "  - doubly constrained        :  0   D",
           RULE,
           "PROJECT INFORMATION:",
           "pronr.  #jobs rel.date duedate tardcost  MPM-Time",
           f"    1     {sink - 2}      0       {horizon // 3}        0       {horizon // 3}",
           RULE,
           "PRECEDENCE RELATIONS:",
           "jobnr.    #modes  #successors   successors"]
    for j in range(1, sink + 1):
        s = succ[j]
        out.append(f"{j:>4}        1        {len(s):>3}       " + "".join(f"{x:>4}" for x in s))
    out += [RULE,
            "REQUESTS/DURATIONS:",
            "jobnr. mode duration  " + "  ".join(f"R {k + 1}" for k in range(RESOURCES)),
            "-" * 72]
    for j in range(1, sink + 1):
        out.append(f"{j:>3}      1  {durations[j]:>3}    " + "".join(f"{q:>5}" for q in requests[j]))
    out += [RULE,
            "RESOURCEAVAILABILITIES:",
            "  " + "  ".join(f"R {k + 1}" for k in range(RESOURCES)),
            "  " + "".join(f"{c:>5}" for c in capacities),
            RULE]
    return "\n".join(out) + "\n"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="data/networks")
    ap.add_argument("--per-family", type=int, default=5)
    ap.add_argument("--seed", type=int, default=2024)
    args = ap.parse_args()
    root = pathlib.Path(args.out_dir)
    for fi, family in enumerate(["wide", "deep"]):
        (root / family).mkdir(parents=True, exist_ok=True)
        for i in range(args.per_family):
            seed = args.seed * 1000 + fi * 100 + i
            rng = random.Random(seed)
            name = f"{family}{i + 1:02d}"
            text = render(name, *network(family, rng), seed)
            (root / family / f"{name}.sm").write_text(text)


if __name__ == "__main__":
    main()
