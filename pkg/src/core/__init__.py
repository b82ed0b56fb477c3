"""Core packages: permutation groups, finite groups, digraphs, automorphism
search, quotients, censuses and the lemma lab.

Import from the subpackages directly; nothing is re-exported here.
"""
