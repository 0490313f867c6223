"""Modules of affine D_n path algebras and tagged edges on a twice-punctured disk."""
