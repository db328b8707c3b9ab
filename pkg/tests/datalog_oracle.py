"""Independent reimplementation of the four translation steps.

Works on the plain ``(predicate, [(tag, value), ...])`` pair form and
shares no code with ``purelint.datalog``: every condition is found by
scanning positions directly.
"""


def convert(pred, args):
    n = len(args)
    cols = ["x_%d" % i for i in range(n)]

    # step 1: positional rename
    expr = "rename[%s](%s)" % (",".join(cols), pred)

    # step 2: constants first (left to right), then, variable by variable
    # in order of first appearance, each occurrence equated with the previous one
    conds = []
    for i in range(n):
        tag, val = args[i]
        if tag == "num":
            conds.append("x_%d=%d" % (i, val))
        elif tag == "str":
            conds.append('x_%d="%s"' % (i, val))
    order = []
    for tag, val in args:
        if tag == "var" and val not in order:
            order.append(val)
    for v in order:
        prev = -1
        for j in range(n):
            if args[j] == ("var", v):
                if prev >= 0:
                    conds.append("x_%d=x_%d" % (prev, j))
                prev = j
    if conds:
        expr = "select[%s](%s)" % (" and ".join(conds), expr)

    if not order:
        return expr

    # step 3: project onto the first column holding each variable
    firsts = []
    for v in order:
        firsts.append(cols[[a for a in range(n) if args[a] == ("var", v)][0]])
    expr = "project[%s](%s)" % (",".join(firsts), expr)

    # step 4: rename back to variable names
    return "rename[%s](%s)" % (",".join(order), expr)


def atom_text(pred, args):
    parts = []
    for tag, val in args:
        parts.append('"%s"' % val if tag == "str" else str(val))
    return "%s(%s)" % (pred, ",".join(parts))


def random_atom(rng, max_arity=6, var_names=("x", "y", "z")):
    arity = rng.randint(1, max_arity)
    pred = rng.choice(["p", "q", "r", "edge", "person"])
    args = []
    for _ in range(arity):
        kind = rng.choice(["var", "var", "num", "str"])
        if kind == "var":
            args.append(("var", rng.choice(var_names)))
        elif kind == "num":
            args.append(("num", rng.randint(1, 99)))
        else:
            args.append(("str", rng.choice(["john", "mary", "a b", "x"])))
    return pred, args
