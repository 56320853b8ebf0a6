"""sim package"""
