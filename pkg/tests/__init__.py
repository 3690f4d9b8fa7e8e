"""isac-beamscan test suite."""
