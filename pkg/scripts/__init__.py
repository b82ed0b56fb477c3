"""Project scripts package (maintenance scripts + unit tests)."""
