# Python unit tests for spin7_tools (PYTHONPATH=py python -m unittest discover -s py/tests).
