"""
Radio models: link budget, link tables and coverage/interference evaluation.
"""
