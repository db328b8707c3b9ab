def greet(name):  # expect: FP004
    return print("hello " + name)
