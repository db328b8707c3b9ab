def countdown(n):
    steps = []
    while n > 0:  # expect: FP003
        steps = steps + [n]
        n = n - 1
    return steps
