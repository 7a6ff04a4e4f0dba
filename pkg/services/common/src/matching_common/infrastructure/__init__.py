from matching_common.infrastructure.interfaces import TextCodec

__all__ = ["TextCodec"]
