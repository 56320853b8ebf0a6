"""cli package"""
