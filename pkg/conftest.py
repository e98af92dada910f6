import os

import django


os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'sistema_autoenlace.settings')
django.setup()
