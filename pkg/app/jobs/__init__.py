"""Job entry points for offline tasks."""
