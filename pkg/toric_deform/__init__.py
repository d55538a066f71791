"""Deformazioni toriche omogenee, classificazione di singolarità e terminalizzazioni simultanee."""
