"""An educational proof checker with a controlled-natural-language tactic
grammar, mixed exercise documents, and an autograder."""

__version__ = "0.1.0"
