"""Mather-Jacobian minimal log discrepancies via jets, Newton polygons and classification."""
