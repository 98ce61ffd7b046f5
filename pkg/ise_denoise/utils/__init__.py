"""Utility package for the ISE artifact removal toolkit."""
