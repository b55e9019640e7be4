# Ensures the tests directory is importable so test modules can share the
# oracle helpers in oracles.py.
