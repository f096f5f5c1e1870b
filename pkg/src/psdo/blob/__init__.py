from psdo.blob.local_fs import LocalFS, format_cell

__all__ = ["LocalFS", "format_cell"]
