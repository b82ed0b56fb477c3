"""Cayley Census"""
