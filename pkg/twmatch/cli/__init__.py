"""CLI entry points for the twmatch tools."""
