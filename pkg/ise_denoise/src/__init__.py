"""Source package for the ISE artifact removal toolkit."""
