"""Abstract interface for line-oriented document formats."""

from abc import ABC, abstractmethod
from typing import Generic, TypeVar

T = TypeVar("T")


class TextCodec(ABC, Generic[T]):
    """Abstract base class for reading and writing a document format."""

    @abstractmethod
    def parse(self, text: str) -> T:
        """
        Parses a document into its model.

        Args:
            text: The full document text.

        Returns:
            The parsed model.

        Raises:
            InstanceValidationError: If the document is malformed.
        """

    @abstractmethod
    def render(self, value: T) -> str:
        """
        Renders a model back into the document format.

        Args:
            value: The model to render.

        Returns:
            The document text, newline terminated.
        """
