"""Verification harness: file formats, random generators, lemma suites,
counterexample search, and the command line."""
