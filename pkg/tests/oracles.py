"""Independent brute-force reference implementations used by the tests.

Nothing here imports the code under test; everything is plain loops over
Python floats so that the vectorized implementations are checked against
a second, obviously-correct route.
"""

import math

import numpy as np


def euclid(x, y):
    return math.sqrt(sum((float(a) - float(b)) ** 2 for a, b in zip(x, y)))


def hausdorff(a, b, variant):
    a = [list(map(float, r)) for r in np.atleast_2d(a)]
    b = [list(map(float, r)) for r in np.atleast_2d(b)]
    a_to_b = []
    for x in a:
        best = math.inf
        for y in b:
            best = min(best, euclid(x, y))
        a_to_b.append(best)
    b_to_a = []
    for y in b:
        best = math.inf
        for x in a:
            best = min(best, euclid(x, y))
        b_to_a.append(best)
    if variant == "MaximalHausdorff":
        return max(max(a_to_b), max(b_to_a))
    if variant == "MinimalHausdorff":
        best = math.inf
        for x in a:
            for y in b:
                best = min(best, euclid(x, y))
        return best
    return (sum(a_to_b) + sum(b_to_a)) / (len(a) + len(b))


def distance_table(bags_a, bags_b, variant):
    return [[hausdorff(x, y, variant) for y in bags_b] for x in bags_a]


def sorted_neighbors(row, exclude=None):
    """Exhaustive sort of (distance, index) pairs."""
    pairs = sorted((d, j) for j, d in enumerate(row) if j != exclude)
    return [j for _, j in pairs]


def brknn(train_bags, y, query_bags, k, variant):
    y = [[int(v) for v in r] for r in y]
    q = len(y[0])
    out_bip, out_conf = [], []
    for row in distance_table(query_bags, train_bags, variant):
        nn = sorted_neighbors(row)[:k]
        conf = [sum(y[j][l] for j in nn) / k for l in range(q)]
        out_conf.append(conf)
        out_bip.append([1 if c >= 0.5 else 0 for c in conf])
    return out_bip, out_conf


def mapknn(train_bags, y, query_bags, k, variant, s=1.0):
    y = [[int(v) for v in r] for r in y]
    m, q = len(y), len(y[0])
    train_d = distance_table(train_bags, train_bags, variant)
    counts = []
    for i in range(m):
        nn = sorted_neighbors(train_d[i], exclude=i)[:k]
        counts.append([sum(y[j][l] for j in nn) for l in range(q)])
    prior1 = [(s + sum(y[i][l] for i in range(m))) / (2 * s + m) for l in range(q)]
    prior0 = [(s + (m - sum(y[i][l] for i in range(m)))) / (2 * s + m) for l in range(q)]
    like1 = [[0.0] * (k + 1) for _ in range(q)]
    like0 = [[0.0] * (k + 1) for _ in range(q)]
    for l in range(q):
        c1 = [0] * (k + 1)
        c0 = [0] * (k + 1)
        for i in range(m):
            if y[i][l] == 1:
                c1[counts[i][l]] += 1
            else:
                c0[counts[i][l]] += 1
        for j in range(k + 1):
            like1[l][j] = (s + c1[j]) / (s * (k + 1) + sum(c1))
            like0[l][j] = (s + c0[j]) / (s * (k + 1) + sum(c0))
    out_bip, out_conf = [], []
    for row in distance_table(query_bags, train_bags, variant):
        nn = sorted_neighbors(row)[:k]
        conf = []
        for l in range(q):
            c = sum(y[j][l] for j in nn)
            p1 = prior1[l] * like1[l][c]
            p0 = prior0[l] * like0[l][c]
            conf.append(p1 / (p1 + p0))
        out_conf.append(conf)
        out_bip.append([1 if v >= 0.5 else 0 for v in conf])
    return out_bip, out_conf


def citation_members(train_d, query_row, r, c):
    """References + citers of a query by exhaustive ranking.

    The query is ranked as index m, after every training bag, so it loses
    all distance ties.
    """
    m = len(train_d)
    refs = set(sorted_neighbors(query_row)[:r])
    citers = set()
    for j in range(m):
        pairs = [(train_d[j][t], t) for t in range(m) if t != j] + [(query_row[j], m)]
        top = [t for _, t in sorted(pairs)[:c]]
        if m in top:
            citers.add(j)
    return sorted(refs | citers)


def mimlknn(train_bags, y, query_bags, r, c, variant, eps=1e-6):
    y = np.asarray(y, dtype=float)
    m, q = y.shape
    train_d = distance_table(train_bags, train_bags, variant)
    v = np.zeros((m, q))
    for i in range(m):
        refs = set(sorted_neighbors(train_d[i], exclude=i)[:r])
        citers = set()
        for j in range(m):
            if j != i and i in sorted_neighbors(train_d[j], exclude=j)[:c]:
                citers.add(j)
        for t in refs | citers:
            v[i] += y[t]
    # dense ridge through an augmented least-squares system
    a = np.vstack([v, math.sqrt(eps) * np.eye(q)])
    b = np.vstack([2 * y - 1, np.zeros((q, q))])
    w = np.linalg.lstsq(a, b, rcond=None)[0]
    confs = []
    for row in distance_table(query_bags, train_bags, variant):
        members = citation_members(train_d, row, r, c)
        vq = np.zeros(q)
        for t in members:
            vq += y[t]
        confs.append(vq @ w)
    return np.array(confs)


# ------------------------------------------------------------------ metrics

def _safe(num, den, empty):
    if empty:
        return 1.0
    return num / den if den else 0.0


def _midranks(conf):
    ranks = []
    for a in conf:
        higher = sum(1 for b in conf if b > a)
        equal = sum(1 for b in conf if b == a)
        ranks.append(higher + (equal + 1) / 2)
    return ranks


def metrics(truth, bip, conf):
    m, q = len(truth), len(truth[0])
    out = {}
    out["Hamming Loss"] = sum(truth[i][l] != bip[i][l] for i in range(m) for l in range(q)) / (m * q)
    out["Subset Accuracy"] = sum(list(truth[i]) == list(bip[i]) for i in range(m)) / m
    ep, er, ef, ea = [], [], [], []
    for i in range(m):
        t = {l for l in range(q) if truth[i][l]}
        z = {l for l in range(q) if bip[i][l]}
        empty = not t and not z
        ep.append(_safe(len(t & z), len(z), empty))
        er.append(_safe(len(t & z), len(t), empty))
        ef.append(_safe(2 * len(t & z), len(t) + len(z), empty))
        ea.append(_safe(len(t & z), len(t | z), empty))
    out["Example-Based Precision"] = sum(ep) / m
    out["Example-Based Recall"] = sum(er) / m
    out["Example-Based F Measure"] = sum(ef) / m
    out["Example-Based Accuracy"] = sum(ea) / m
    per = {"p": [], "r": [], "f": []}
    TP = FP = FN = 0
    for l in range(q):
        tp = sum(1 for i in range(m) if truth[i][l] and bip[i][l])
        fp = sum(1 for i in range(m) if not truth[i][l] and bip[i][l])
        fn = sum(1 for i in range(m) if truth[i][l] and not bip[i][l])
        TP, FP, FN = TP + tp, FP + fp, FN + fn
        empty = tp + fp + fn == 0
        per["p"].append(_safe(tp, tp + fp, empty))
        per["r"].append(_safe(tp, tp + fn, empty))
        per["f"].append(_safe(2 * tp, 2 * tp + fp + fn, empty))
    out["Macro-averaged Precision"] = sum(per["p"]) / q
    out["Macro-averaged Recall"] = sum(per["r"]) / q
    out["Macro-averaged F-Measure"] = sum(per["f"]) / q
    empty = TP + FP + FN == 0
    out["Micro-averaged Precision"] = _safe(TP, TP + FP, empty)
    out["Micro-averaged Recall"] = _safe(TP, TP + FN, empty)
    out["Micro-averaged F-Measure"] = _safe(2 * TP, 2 * TP + FP + FN, empty)
    one, cov, rl, ap = [], [], [], []
    for i in range(m):
        rel = [l for l in range(q) if truth[i][l]]
        irr = [l for l in range(q) if not truth[i][l]]
        if not rel:
            continue
        c = list(conf[i])
        ranks = _midranks(c)
        best = max(c)
        top = [l for l in range(q) if c[l] == best]
        one.append(sum(1 for l in top if l in irr) / len(top))
        cov.append(max(ranks[l] for l in rel) - 1)
        precs = []
        for l in rel:
            above = sum(1 for u in rel if c[u] > c[l]) + (sum(1 for u in rel if c[u] == c[l]) + 1) / 2
            precs.append(above / ranks[l])
        ap.append(sum(precs) / len(precs))
        if irr:
            bad = 0.0
            for a in rel:
                for b in irr:
                    if c[a] < c[b]:
                        bad += 1
                    elif c[a] == c[b]:
                        bad += 0.5
            rl.append(bad / (len(rel) * len(irr)))
    out["One-Error"] = sum(one) / len(one) if one else 0.0
    out["Coverage"] = sum(cov) / len(cov) if cov else 0.0
    out["Ranking Loss"] = sum(rl) / len(rl) if rl else 0.0
    out["Average Precision"] = sum(ap) / len(ap) if ap else 1.0
    return out, per
