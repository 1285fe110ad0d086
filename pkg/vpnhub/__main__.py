#!/usr/bin/env python3
from vpnhub import command

if __name__ == '__main__':
    command.main()
