"""boost package"""
