from shiftcert.core import *
