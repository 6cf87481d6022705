# Tests package for clausetrim.
