values = [3, 8, 1]
big = [y for x in values if (y := x * 10) > 20]  # expect: FP007
