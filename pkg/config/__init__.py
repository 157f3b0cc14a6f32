"""Configuration package for the LSAT semantics toolkit"""
