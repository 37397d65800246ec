"""Exact computation engine: linear algebra, quivers, algebras, modules and the pro-species constructions"""
