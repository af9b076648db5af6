"""
Mean quantum Fisher information under random local unitary noise
"""
