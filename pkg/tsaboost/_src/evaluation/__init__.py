"""evaluation package"""
