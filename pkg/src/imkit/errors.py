class UsageError(ValueError):
    """Raised when an operation is called outside its precondition."""
