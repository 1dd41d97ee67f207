"""Repositories"""
