"""grid package"""
