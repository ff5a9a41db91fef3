#!/usr/bin/env python3
"""Brute-force oracle for the crossnet fixture.

Recomputes every per-user and per-pair metric straight from the set
definitions, with Fractions, and writes four CSVs next to the fixture:
user_metrics.exact.csv / pair_metrics.exact.csv (reduced fractions) and
user_metrics.csv / pair_metrics.csv (decimals formatted like the CLI).

usage: crossnet_oracle.py FIXTURE_DIR
"""
import csv
import sys
from fractions import Fraction
from pathlib import Path

UNDEF = None


def rows(path):
    out = []
    for line in Path(path).read_text().splitlines():
        if not line or line.startswith("#"):
            continue
        out.append(line.split("\t"))
    return out


def ratio(num, den):
    return UNDEF if den == 0 else Fraction(num, den)


def exact(x):
    if x is UNDEF:
        return "undefined"
    return f"{x.numerator}/{x.denominator}"


def decimal(x):
    if x is UNDEF:
        return "nan"
    s = repr(float(x))
    return s[:-2] if s.endswith(".0") else s


def clustering(arcs, u):
    nbrs = {b for a, b in arcs if a == u} | {a for a, b in arcs if b == u}
    nbrs.discard(u)
    links = sum(1 for x in nbrs for y in nbrs if x != y and (x, y) in arcs)
    return ratio(links, len(nbrs) * (len(nbrs) - 1))


def main(fixture):
    fixture = Path(fixture)
    order = []
    arcs = set()
    for r in rows(fixture / "target.tsv"):
        for x in r:
            if x not in order:
                order.append(x)
        if len(r) == 2 and r[0] != r[1]:
            arcs.add((r[0], r[1]))
    source = set()
    for a, b in rows(fixture / "source.tsv"):
        if a != b:
            source.add(frozenset((a, b)))
    image = {t: s for t, s in rows(fixture / "mapping.tsv") if t in order}
    events = [(a, b, k, int(t)) for a, b, k, t in rows(fixture / "interactions.tsv") if a in order and b in order]
    interests = {n: set(filter(None, labels.split(","))) for n, labels in rows(fixture / "interests.tsv")}

    connected = set(image)

    def src_edge(u, v):
        return u in image and v in image and frozenset((image[u], image[v])) in source

    copied = {(u, v) for (u, v) in arcs if src_edge(u, v)}
    native = arcs - copied
    social_arcs = {(a, b) for a, b, _, _ in events if (a, b) in arcs}
    copied_net = copied
    kinds = sorted({k for _, _, k, _ in events})

    header = ["node", "connected", "category", "cr", "cr_ind", "cr_out", "r_copied", "r_native",
              "copied_frac_reciprocated", "clustering_copied_net", "clustering_native_net", "clustering_target",
              "clustering_interaction", "interaction_frac_reciprocated", "interaction_frac_unreciprocated",
              "interaction_frac_copied", "interaction_frac_native", "social_ratio_activity",
              "social_ratio_influence", "fb_ratio_activity", "fb_ratio_influence", "events_made",
              "events_received", "copied_friend_count", "native_fof_follower_count"]
    for k in kinds:
        header += [f"made_{k}", f"received_{k}"]

    users = []
    for u in order:
        fr = {w for w in order if w != u and src_edge(u, w)}
        ind = {a for a, b in arcs if b == u}
        out = {b for a, b in arcs if a == u}
        every = ind | out
        cr = ratio(len(every & fr), len(every))
        if cr is UNDEF:
            category = "undefined"
        elif cr == 0:
            category = "native"
        elif cr == 1:
            category = "expat"
        else:
            category = "binetworked"
        r_copied = ratio(len(fr & ind & out), len(fr & every))
        r_native = ratio(len((ind - fr) & (out - fr)), len((ind - fr) | (out - fr)))
        frac_recip = ratio(len(ind & out & fr), len(ind & out))

        incident = [(u, v) for v in out] + [(v, u) for v in ind]
        def share(pred):
            sel = [e for e in incident if pred(e)]
            return ratio(sum(1 for e in sel if e in social_arcs), len(sel))
        f_rec = share(lambda e: (e[1], e[0]) in arcs)
        f_unrec = share(lambda e: (e[1], e[0]) not in arcs)
        f_cop = share(lambda e: e in copied)
        f_nat = share(lambda e: e in native)

        made = [e for e in events if e[0] == u]
        received = [e for e in events if e[1] == u]
        made_social = [e for e in made if (e[0], e[1]) in arcs]
        received_social = [e for e in received if (e[0], e[1]) in arcs]
        s_act = ratio(len(made_social), len(made))
        s_inf = ratio(len(received_social), len(received))
        fb_act = ratio(sum(1 for e in made_social if (e[0], e[1]) in copied), len(made_social))
        fb_inf = ratio(sum(1 for e in received_social if (e[0], e[1]) in copied), len(received_social))

        copied_friends = {c for c in out if (u, c) in copied}
        native_followers = {v for v in ind if (v, u) in native}
        fof = {v for v in native_followers
               if any((v, c) in arcs or (c, v) in arcs for c in copied_friends)}

        cc_copied = clustering(copied_net, u) if u in connected else UNDEF
        values = [cr, ratio(len(ind & fr), len(ind)), ratio(len(out & fr), len(out)), r_copied, r_native,
                  frac_recip, cc_copied, clustering(native, u), clustering(arcs, u), clustering(social_arcs, u),
                  f_rec, f_unrec, f_cop, f_nat, s_act, s_inf, fb_act, fb_inf]
        counts = [len(made), len(received), len(copied_friends), len(fof)]
        for k in kinds:
            counts += [sum(1 for e in made if e[2] == k), sum(1 for e in received if e[2] == k)]
        users.append((u, int(u in connected), category, values, counts))

    pairs = {}
    for a, b in arcs:
        key = tuple(sorted((a, b), key=order.index))
        pairs.setdefault(key, "copied" if (a, b) in copied else "native")
    for u in order:
        for v in order:
            if order.index(u) < order.index(v) and src_edge(u, v) and (u, v) not in arcs and (v, u) not in arcs:
                pairs[(u, v)] = "uncopied"

    def source_friends(x):
        return {next(iter(e - {x})) for e in source if x in e}

    pair_rows = []
    for (u, v) in sorted(pairs, key=lambda p: (order.index(p[0]), order.index(p[1]))):
        iu, iv = interests.get(u, set()), interests.get(v, set())
        sim = ratio(len(iu & iv), len(iu | iv))
        if u in image and v in image:
            lu, lv = source_friends(image[u]), source_friends(image[v])
            close = ratio(len(lu & lv), len(lu | lv))
        else:
            close = UNDEF
        pair_rows.append((u, v, pairs[(u, v)], sim, close))

    for fmt, suffix in ((exact, ".exact.csv"), (decimal, ".csv")):
        with open(fixture / f"user_metrics{suffix}", "w", newline="") as f:
            w = csv.writer(f, lineterminator="\n")
            w.writerow(header)
            for u, conn, cat, values, counts in users:
                w.writerow([u, conn, cat] + [fmt(x) for x in values] + counts)
        with open(fixture / f"pair_metrics{suffix}", "w", newline="") as f:
            w = csv.writer(f, lineterminator="\n")
            w.writerow(["u", "v", "link_class", "similarity", "closeness"])
            for u, v, cls, sim, close in pair_rows:
                w.writerow([u, v, cls, fmt(sim), fmt(close)])


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "fixtures" / "crossnet10")
