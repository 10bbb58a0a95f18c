"""Bundled data files: reference diagram codes and example shadows."""
