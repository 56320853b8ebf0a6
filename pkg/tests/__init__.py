""" tests """
