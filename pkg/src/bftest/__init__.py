"""Property testers and membership-query learners for Boolean function classes
with concise representations, plus a statistical verification harness.
"""

__version__ = "0.1.0"
