"""Search budget definitions."""

from pydantic import BaseModel, ConfigDict, Field, model_validator


class SearchBudget(BaseModel):
    """How long a search may run: a fixed number of iterations or wall-clock milliseconds.

    Exactly one of the two fields is set.
    """

    model_config = ConfigDict(frozen=True)

    iterations: int | None = Field(default=None, ge=1)
    """Number of MCTS iterations; deterministic given a seed."""

    time_ms: int | None = Field(default=None, ge=1)
    """Thinking time per move in milliseconds."""

    @model_validator(mode="after")
    def _exactly_one_mode(self) -> "SearchBudget":
        if (self.iterations is None) == (self.time_ms is None):
            raise ValueError("Set exactly one of 'iterations' and 'time_ms'")
        return self

    @classmethod
    def of_iterations(cls, n: int) -> "SearchBudget":
        return cls(iterations=n)

    @classmethod
    def of_time_ms(cls, ms: int) -> "SearchBudget":
        return cls(time_ms=ms)

    @property
    def is_wall_clock(self) -> bool:
        return self.time_ms is not None

    def describe(self) -> str:
        return f"{self.iterations} iterations" if self.iterations is not None else f"{self.time_ms} ms"
