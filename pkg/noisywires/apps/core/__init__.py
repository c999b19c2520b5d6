"""
Core application package for shared functionality and utilities.

This package provides:
- Custom exceptions with exit codes for the command line
- A management-command base class with uniform error handling
- CSV/JSON record formatting
- Validation framework for parameter preconditions
"""
