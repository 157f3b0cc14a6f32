"""Test suite for the LSAT semantics toolkit"""
