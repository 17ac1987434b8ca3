"""Text templates for subnoether reports."""
