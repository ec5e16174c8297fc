from .base import BaseAgent
from .players import GreedyAgent, RandomAgent, SearchAgent

__all__ = ["BaseAgent", "SearchAgent", "GreedyAgent", "RandomAgent"]
