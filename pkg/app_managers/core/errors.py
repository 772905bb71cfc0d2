class ToolkitError(Exception):
    exit_code = 1


class InputError(ToolkitError):
    pass


class ParseError(InputError):
    def __init__(self, message: str, position: int = None, text: str = None) -> None:
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class FieldMismatchError(ToolkitError):
    pass


class DimensionError(ToolkitError):
    pass


class BudgetExceededError(ToolkitError):
    exit_code = 2

    def __init__(self, message: str, required: int = None, budget: int = None) -> None:
        self.required = required
        self.budget = budget
        if required is not None and budget is not None:
            message = f"{message} (required {required}, budget {budget})"
        super().__init__(message)


class SearchExhaustedError(ToolkitError):
    exit_code = 2


class InconsistencyError(ToolkitError):
    exit_code = 3
