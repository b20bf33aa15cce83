"""Corpus generation, theorem verification and separation search."""
