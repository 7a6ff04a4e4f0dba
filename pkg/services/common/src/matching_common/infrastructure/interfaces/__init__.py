from matching_common.infrastructure.interfaces.text_codec import TextCodec

__all__ = ["TextCodec"]
