"""Decide first-order fragments of regular languages of finite and infinite words."""
