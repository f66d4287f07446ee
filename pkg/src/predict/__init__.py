"""Predicting the state of a cell after t steps from a finite pattern."""
from src.predict.instance import PredictionInstance, predict_naive
from src.predict.rle import RleColumn
from src.predict.search import (
    ColumnAssembly,
    ColumnSearch,
    NoConsistentColumnsError,
    SearchBudgetExceededError,
    predict_column_search,
)
from src.predict.stream import ChangeBoundExceededError, StreamingPredictor, predict_oneway_stream

__all__ = [
    "PredictionInstance",
    "predict_naive",
    "RleColumn",
    "ColumnAssembly",
    "ColumnSearch",
    "NoConsistentColumnsError",
    "SearchBudgetExceededError",
    "predict_column_search",
    "ChangeBoundExceededError",
    "StreamingPredictor",
    "predict_oneway_stream",
]
