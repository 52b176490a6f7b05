
"""
    libs
    ~~~~
"""
