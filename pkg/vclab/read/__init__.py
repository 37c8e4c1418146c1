#from .spacefile import load_space, save_space
#from .schemefile import load_scheme, save_scheme
