"""defaults module"""
