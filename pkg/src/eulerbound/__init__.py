"""Exact verification of Euler-product lower bounds for the prime counting function."""
import sys

# Products and factorials here routinely exceed the default 4300-digit
# str/int conversion guard; JSON output needs their exact decimal form.
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)

__version__ = "0.1.0"
